import json

from fermat4.cache import ClassCache, load_class_table, make_header, store_class_table
from fermat4.torsion import TorsionVector, representative_divisor


def _table(ws, n=5):
    return {v: representative_divisor(v, ws) for v in list(TorsionVector.all())[:n]}


def test_store_then_load_round_trip(tmp_path, ws73):
    path = tmp_path / "c.jsonl"
    table = _table(ws73)
    store_class_table(ClassCache(path, ws73.curve), table)
    loaded = load_class_table(ClassCache(path, ws73.curve))
    assert loaded == {v.key(): D.to_json() for v, D in table.items()}


def test_store_is_idempotent(tmp_path, ws73):
    path = tmp_path / "c.jsonl"
    cache = ClassCache(path, ws73.curve)
    store_class_table(cache, _table(ws73))
    store_class_table(cache, _table(ws73))
    assert len(path.read_text().splitlines()) == 1 + 5


def test_wrong_field_fingerprint_rebuilds(tmp_path, ws73, wsq):
    path = tmp_path / "c.jsonl"
    store_class_table(ClassCache(path, ws73.curve), _table(ws73))
    other = ClassCache(path, wsq.curve)
    assert other.records == [] and other.warnings
    assert json.loads(path.read_text().splitlines()[0]) == make_header(wsq.curve)


def test_truncated_last_line_drops_only_the_tail(tmp_path, ws73):
    path = tmp_path / "c.jsonl"
    cache = ClassCache(path, ws73.curve)
    cache.append([{"kind": "h0", "key": f"{k:06d}", "h0": 1} for k in range(4)])
    text = path.read_text()
    path.write_text(text[:-7])  # cut into the last record
    again = ClassCache(path, ws73.curve)
    assert [r["key"] for r in again.records] == ["000000", "000001", "000002"]
    assert again.warnings
    assert path.read_text().endswith("\n") and len(path.read_text().splitlines()) == 4


def test_malformed_middle_line_drops_the_rest(tmp_path, ws73):
    path = tmp_path / "c.jsonl"
    cache = ClassCache(path, ws73.curve)
    cache.append([{"kind": "h0", "key": "000000", "h0": 0}])
    with open(path, "a") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps({"kind": "h0", "key": "000001", "h0": 1}) + "\n")
    again = ClassCache(path, ws73.curve)
    assert list(again.select("h0")) == ["000000"]


def test_select_filters(tmp_path, ws73):
    cache = ClassCache(tmp_path / "c.jsonl", ws73.curve)
    cache.append([{"kind": "h0", "key": "1", "mode": "f73", "h0": 1}, {"kind": "h0", "key": "2", "mode": "exact", "h0": 0}])
    assert list(cache.select("h0", mode="f73")) == ["1"]
    assert cache.select("class") == {}
