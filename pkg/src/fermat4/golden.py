"""Expected values used by the verification commands, stored in data/golden.json."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .z4 import Z4Matrix

_override: Path | None = None


def set_golden_path(path: str | Path | None) -> None:
    global _override
    _override = Path(path) if path else None
    load_golden.cache_clear()


@lru_cache(maxsize=None)
def load_golden() -> dict:
    if _override is not None:
        return json.loads(_override.read_text())
    return json.loads(resources.files("fermat4").joinpath("data/golden.json").read_text())


def matrix(name: str) -> Z4Matrix:
    return Z4Matrix(load_golden()["matrices"][name]["rows"])


def count(name: str):
    return load_golden()["counts"][name]["value"]
