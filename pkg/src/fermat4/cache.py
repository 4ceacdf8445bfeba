"""Line-delimited JSON cache for the class table and h0 checkpoints.

The first line is a header ``{"format", "field", "curve"}``; each further line
is one record keyed by a 6-digit base-4 torsion key.  A header that does not
match the running field or curve makes the whole file stale; a malformed line
drops that line and everything after it.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from pathlib import Path

from .curve import PlaneCurve
from .errors import CorruptCache
from .fields import field_fingerprint

FORMAT_VERSION = 1
log = logging.getLogger(__name__)


def curve_fingerprint(curve: PlaneCurve) -> str:
    return hashlib.sha256(repr(sorted(curve.form.terms.items())).encode()).hexdigest()[:16]


def make_header(curve: PlaneCurve) -> dict:
    return {"format": FORMAT_VERSION, "field": field_fingerprint(curve.field), "curve": curve_fingerprint(curve)}


def _parse(line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptCache(f"malformed cache line: {line[:60]!r}") from exc
    if not isinstance(obj, dict):
        raise CorruptCache(f"cache line is not an object: {line[:60]!r}")
    return obj


class ClassCache:
    """Append-only record store with a single serialized writer."""

    def __init__(self, path: str | os.PathLike, curve: PlaneCurve):
        self.path = Path(path)
        self.header = make_header(curve)
        self.records: list[dict] = []
        self.warnings: list[str] = []
        self._lock = threading.Lock()
        self._load()

    def _warn(self, msg: str) -> None:
        self.warnings.append(msg)
        log.warning(msg)

    def _load(self) -> None:
        if not self.path.exists():
            self._rewrite()
            return
        text = self.path.read_text()
        lines = text.split("\n")
        complete = text.endswith("\n")
        good: list[dict] = []
        try:
            head = _parse(lines[0]) if lines and lines[0] else None
        except CorruptCache:
            head = None
        if head != self.header:
            self._warn(f"stale or unreadable cache header in {self.path}; rebuilding")
            self._rewrite()
            return
        body = lines[1:]
        if complete:
            body = body[:-1]
        dropped = 0
        for i, line in enumerate(body):
            last = i == len(body) - 1
            try:
                if last and not complete:
                    raise CorruptCache("truncated final line")
                rec = _parse(line)
                if "key" not in rec:
                    raise CorruptCache("record without key")
                good.append(rec)
            except CorruptCache as exc:
                dropped = len(body) - i
                self._warn(f"{exc}; dropping {dropped} trailing line(s) of {self.path}")
                break
        self.records = good
        if dropped:
            self._rewrite()

    def _rewrite(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with open(tmp, "w") as fh:
            fh.write(json.dumps(self.header, sort_keys=True) + "\n")
            for rec in self.records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        os.replace(tmp, self.path)

    def append(self, records: list[dict]) -> None:
        with self._lock:
            with open(self.path, "a") as fh:
                for rec in records:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self.records.extend(records)

    def select(self, kind: str, **match) -> dict[str, dict]:
        return {
            r["key"]: r
            for r in self.records
            if r.get("kind") == kind and all(r.get(k) == v for k, v in match.items())
        }


def store_class_table(cache: ClassCache, table: dict) -> None:
    """Persist ``TorsionVector -> Divisor`` entries not yet present."""
    have = cache.select("class")
    new = [
        {"kind": "class", "key": v.key(), "divisor": D.to_json()}
        for v, D in sorted(table.items(), key=lambda kv: kv[0].key())
        if v.key() not in have
    ]
    if new:
        cache.append(new)


def load_class_table(cache: ClassCache) -> dict[str, list]:
    return {k: r["divisor"] for k, r in cache.select("class").items()}
