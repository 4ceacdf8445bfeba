"""Check and report records shared by the verification commands."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def _plain(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return repr(value)


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    passed: bool
    source: str = "derived"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": _plain(self.expected),
            "source": self.source,
            "computed": _plain(self.computed),
            "pass": bool(self.passed),
        }


@dataclass
class Report:
    command: str
    field_mode: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    timing: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, expected: Any, computed: Any, source: str = "derived", passed: bool | None = None) -> bool:
        ok = (expected == computed) if passed is None else passed
        self.checks.append(Check(name, expected, computed, bool(ok), source))
        return bool(ok)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.expected, c.computed, c.passed, c.source))
        self.notes.extend(other.notes)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self, with_timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "field_mode": self.field_mode,
            "checks": [c.to_json() for c in self.checks],
            "notes": list(self.notes),
            "pass": self.passed,
        }
        if with_timing:
            out["timing"] = round(self.timing, 3)
        return out

    def to_text(self) -> str:
        lines = [f"== {self.command} [{self.field_mode}] {'PASS' if self.passed else 'FAIL'} ({self.timing:.2f}s)"]
        width = max((len(c.name) for c in self.checks), default=10)
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(
                f"  {mark} {c.name.ljust(width)}  computed={json.dumps(_plain(c.computed))}"
                + ("" if c.passed else f"  expected={json.dumps(_plain(c.expected))} [{c.source}]")
            )
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
