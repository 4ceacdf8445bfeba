import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat4.errors import NotFound
from fermat4.torsion import (
    CUSP_TABLE,
    CuspCoordinates,
    TorsionVector,
    _binary_vectors,
    convert_cusp_coords,
    cusp_divisor,
    decompose,
    representative_divisor,
    verify_basis,
    verify_key_identity,
    verify_rohrlich,
)

vectors = st.lists(st.integers(min_value=0, max_value=3), min_size=6, max_size=6).map(lambda c: TorsionVector(tuple(c)))


def test_vector_arithmetic_and_keys():
    v = TorsionVector.of(1, 2, 3, 0, 1, 3)
    assert v + (-v) == TorsionVector.zero()
    assert 4 * v == TorsionVector.zero()
    assert TorsionVector.from_key(v.key()) == v
    assert sum(1 for _ in TorsionVector.all()) == 4096
    assert sum(1 for _ in CuspCoordinates.all()) == 2048
    assert CuspCoordinates.of(5, 0, 0, 0, 0, 3).coeffs == (1, 0, 0, 0, 0, 1)


def test_binary_round_trip(ws73):
    for u in _binary_vectors():
        assert decompose(representative_divisor(u, ws73), "shadow_f73") == u


def test_random_round_trip(ws73):
    rng = random.Random(2024)
    for _ in range(64):
        v = TorsionVector(tuple(rng.randrange(4) for _ in range(6)))
        assert decompose(representative_divisor(v, ws73), "shadow_f73") == v


@settings(max_examples=20, deadline=None)
@given(vectors, vectors)
def test_decompose_is_additive(u, v):
    from fermat4.workspace import get_workspace

    ws = get_workspace("f73")
    D = representative_divisor(u, ws) + representative_divisor(v, ws)
    assert decompose(D, "shadow_f73") == u + v


def test_cusp_coordinates_agree_with_cusp_divisors(ws73):
    rng = random.Random(7)
    for _ in range(24):
        c = CuspCoordinates(tuple(rng.randrange(4) for _ in range(6)))
        assert decompose(cusp_divisor(c, ws73), "shadow_f73") == convert_cusp_coords(c)


def test_cusp_table(ws73):
    for name, coords in CUSP_TABLE.items():
        v = decompose(ws73.div(name, ("B0", -1)), "shadow_f73")
        assert v == convert_cusp_coords(CuspCoordinates(coords))


def test_decompose_rejects_nonzero_degree(ws73):
    with pytest.raises(NotFound):
        decompose(ws73.div("A0"), "shadow_f73")


def test_exact_and_two_phase_round_trip(wsq):
    for v in (TorsionVector.of(1, 0, 3, 0, 2, 1), TorsionVector.of(0, 2, 0, 1, 0, 3)):
        D = representative_divisor(v, wsq)
        assert decompose(D, "two_phase") == v
    assert decompose(wsq.div("C3", ("B0", -1)), "exact") == convert_cusp_coords(CuspCoordinates(CUSP_TABLE["C3"]))


@pytest.mark.parametrize("fn", [verify_rohrlich, verify_key_identity, verify_basis])
def test_reports_pass_in_shadow_mode(fn):
    rep = fn("f73")
    assert rep.passed, rep.to_text()
