import io
import json
import subprocess
import sys

import pytest

from fermat4.cli import COMMANDS, ConfigError, RunConfig, main, parse_commands, run
from fermat4.golden import load_golden, set_golden_path


def run_json(tmp_path, *commands, mode="f73", cache=True, jobs=1, golden=None):
    out = io.StringIO()
    cfg = RunConfig(mode, list(commands), str(tmp_path / "c.jsonl") if cache else None, "json", jobs, golden)
    code = run(cfg, out)
    return code, json.loads(out.getvalue())


@pytest.fixture(autouse=True)
def _reset_golden():
    yield
    set_golden_path(None)


def test_parse_commands():
    assert [c for c, _ in parse_commands(["all"])] == list(COMMANDS)
    assert parse_commands(["mordell-weil", "Q", "Q_i", "basis"]) == [("mordell-weil", ["Q", "Q_i"]), ("basis", [])]
    with pytest.raises(ConfigError):
        parse_commands(["nonsense"])
    with pytest.raises(ConfigError):
        parse_commands(["mordell-weil", "Q_x"])


def test_json_schema_and_exit_code(tmp_path):
    code, reports = run_json(tmp_path, "galois-matrices", "mordell-weil", "Q_zeta8")
    assert code == 0
    assert [r["command"] for r in reports] == ["galois-matrices", "mordell-weil Q_zeta8"]
    for r in reports:
        assert {"command", "field_mode", "checks", "pass"} <= set(r)
        for c in r["checks"]:
            assert set(c) == {"name", "expected", "source", "computed", "pass"}
            assert c["source"] in ("published", "derived", "trivial")


def test_reports_are_deterministic(tmp_path):
    def strip(reports):
        for r in reports:
            r.pop("timing")
        return json.dumps(reports, sort_keys=True)

    _, a = run_json(tmp_path, "verify-rohrlich", "weil-matrix", "effective-count")
    _, b = run_json(tmp_path, "verify-rohrlich", "weil-matrix", "effective-count")
    _, c = run_json(tmp_path, "verify-rohrlich", "weil-matrix", "effective-count", cache=False, jobs=2)
    assert strip(a) == strip(b) == strip(c)


def test_failed_check_gives_exit_one(tmp_path, capsys):
    bad = load_golden()
    bad = json.loads(json.dumps(bad))
    bad["matrices"]["theta2"]["rows"][0][0] ^= 1
    path = tmp_path / "g.json"
    path.write_text(json.dumps(bad))
    code, reports = run_json(tmp_path, "automorphisms", golden=str(path))
    assert code == 1 and not reports[0]["pass"]
    assert "theta2 matrix" in capsys.readouterr().err


def test_configuration_errors_give_exit_two(tmp_path, capsys):
    assert run(RunConfig("f73", ["basis"], None, "json", 1, str(tmp_path / "missing.json")), io.StringIO()) == 2
    assert run(RunConfig("f73", ["frobnicate"], None, "json", 1), io.StringIO()) == 2
    assert run(RunConfig("f73", ["basis"], None, "json", 0), io.StringIO()) == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--mode", "nope", "all"])
    assert exc.value.code == 2


def test_cache_environment_override(tmp_path, monkeypatch):
    target = tmp_path / "env.jsonl"
    monkeypatch.setenv("QP_CACHE", str(target))
    proc = subprocess.run(
        [sys.executable, "-m", "fermat4", "verify", "--cache", str(tmp_path / "flag.jsonl"), "zeta-check"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert target.exists() and not (tmp_path / "flag.jsonl").exists()


def test_text_report(tmp_path):
    out = io.StringIO()
    assert run(RunConfig("f73", ["zeta-check"], None, "text", 1), out) == 0
    assert out.getvalue().startswith("== zeta-check [f73] PASS")
