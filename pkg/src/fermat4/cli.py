"""Command line front end: ``fermat4 verify [options] <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from . import census, galois, torsion
from .cache import ClassCache, store_class_table
from .errors import Fermat4Error
from .golden import load_golden, set_golden_path
from .report import Report
from .workspace import get_workspace

log = logging.getLogger("fermat4")

MODES = ("f73", "exact", "two_phase")
COMMANDS = (
    "verify-rohrlich",
    "key-identity",
    "basis",
    "galois-matrices",
    "weil-matrix",
    "gsp-check",
    "automorphisms",
    "mordell-weil",
    "zeta-check",
    "effective-count",
    "quadratic-points",
    "faddeev-maps",
)
DEFAULT_CACHE = os.path.join(os.path.expanduser("~"), ".cache", "fermat4", "classes.jsonl")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    field_mode: str = "f73"
    commands: list[str] = field(default_factory=lambda: ["all"])
    cache_path: str | None = None
    report_format: str = "text"
    parallelism: int = 1
    golden_path: str | None = None


@dataclass
class _Session:
    config: RunConfig
    cache: ClassCache | None = None
    memo: dict = field(default_factory=dict)

    def get(self, key: str, fn: Callable):
        if key not in self.memo:
            self.memo[key] = fn()
        return self.memo[key]


def _mordell_weil(s: _Session, tags: list[str]) -> Report:
    mode = s.config.field_mode
    mats = s.get("rep", lambda: galois.representation_matrices(mode))
    if len(tags) == 1:
        return galois.mordell_weil(tags[0], mode, mats)
    rep = Report("mordell-weil", mode)
    for tag in tags:
        rep.extend(galois.mordell_weil(tag, mode, mats), prefix=f"{tag}: ")
    return rep


def _weil(s: _Session) -> Report:
    mode = s.config.field_mode
    return galois.weil_matrix(mode)


def _effective(s: _Session) -> Report:
    def progress(n: int) -> None:
        print(f"effective-count: {n}/2048", file=sys.stderr, flush=True)

    return census.effective_count_report(s.config.field_mode, s.cache, s.config.parallelism, progress)


def _dispatch(s: _Session, name: str, args: list[str]) -> Report:
    mode = s.config.field_mode
    table: dict[str, Callable[[], Report]] = {
        "verify-rohrlich": lambda: torsion.verify_rohrlich(mode),
        "key-identity": lambda: torsion.verify_key_identity(mode),
        "basis": lambda: torsion.verify_basis(mode),
        "galois-matrices": lambda: galois.galois_matrices(mode),
        "weil-matrix": lambda: _weil(s),
        "gsp-check": lambda: galois.gsp_check_report(mode),
        "automorphisms": lambda: galois.automorphisms(mode),
        "mordell-weil": lambda: _mordell_weil(s, args or list(galois.FIELD_TAGS)),
        "zeta-check": lambda: census.zeta_check(mode),
        "effective-count": lambda: _effective(s),
        "quadratic-points": census.quadratic_points_report,
        "faddeev-maps": lambda: census.faddeev_maps_check(mode=mode),
    }
    t0 = time.perf_counter()
    rep = table[name]()
    rep.timing = time.perf_counter() - t0
    return rep


def parse_commands(words: list[str]) -> list[tuple[str, list[str]]]:
    """Split the positional words into (command, arguments); only mordell-weil takes arguments."""
    out: list[tuple[str, list[str]]] = []
    for w in words:
        if w == "all":
            out.extend((c, []) for c in COMMANDS)
        elif w in COMMANDS:
            out.append((w, []))
        elif out and out[-1][0] == "mordell-weil":
            if w not in galois.FIELD_TAGS:
                raise ConfigError(f"unknown field {w!r} for mordell-weil; choose from {', '.join(galois.FIELD_TAGS)}")
            out[-1][1].append(w)
        else:
            raise ConfigError(f"unknown command {w!r}")
    if not out:
        raise ConfigError("no command given")
    return out


def _cache_workspace(mode: str):
    return get_workspace("f73" if mode == "f73" else "exact")


def run(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        if config.field_mode not in MODES:
            raise ConfigError(f"unknown mode {config.field_mode!r}")
        if config.parallelism < 1:
            raise ConfigError("--jobs must be positive")
        if config.golden_path is not None:
            if not os.path.exists(config.golden_path):
                raise ConfigError(f"golden file {config.golden_path} not found")
            set_golden_path(config.golden_path)
            load_golden()
        commands = parse_commands(config.commands)
        s = _Session(config)
        ws = _cache_workspace(config.field_mode)
        if config.field_mode == "two_phase":
            get_workspace("f73")
        if config.cache_path:
            s.cache = ClassCache(config.cache_path, ws.curve)
            for w in s.cache.warnings:
                print(f"warning: {w}", file=sys.stderr)
    except (ConfigError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    reports: list[Report] = []
    for name, args in commands:
        try:
            rep = _dispatch(s, name, args)
        except Fermat4Error as exc:
            rep = Report(name, config.field_mode)
            rep.check(f"{name} completed", "no error", f"{type(exc).__name__}: {exc}", "derived", passed=False)
        reports.append(rep)
        if config.report_format == "text":
            print(rep.to_text(), file=out, flush=True)
    if s.cache is not None:
        try:
            store_class_table(s.cache, ws.class_table)
        except OSError as exc:
            print(f"warning: could not write the cache: {exc}", file=sys.stderr)
    if config.report_format == "json":
        json.dump([r.to_json() for r in reports], out, indent=1, sort_keys=True)
        out.write("\n")
    failed = [r for r in reports if not r.passed]
    if failed:
        first = failed[0].first_failure()
        print(f"FAILED: {failed[0].command}: {first.name}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermat4", description="Divisor class computations on X^4 + Y^4 = Z^4.")
    sub = p.add_subparsers(dest="action", required=True)
    v = sub.add_parser("verify", help="run verification commands")
    v.add_argument("--mode", choices=MODES, default="f73")
    v.add_argument("--report", choices=("json", "text"), default="text")
    v.add_argument("--cache", default=None, help="class cache file (QP_CACHE overrides)")
    v.add_argument("--no-cache", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--golden", default=None, help="alternative golden data file")
    v.add_argument("-v", "--verbose", action="store_true")
    v.add_argument("commands", nargs="+", metavar="command", help=f"one of: {', '.join(COMMANDS)}, all")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    cache = None
    if not args.no_cache:
        cache = os.environ.get("QP_CACHE") or args.cache or DEFAULT_CACHE
    config = RunConfig(args.mode, args.commands, cache, args.report, args.jobs, args.golden)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
