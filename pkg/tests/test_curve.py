import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat4.curve import (
    Form,
    branch,
    enumerate_points,
    eval_ord0,
    fermat_quartic,
    is_smooth_at,
    ord_at,
    standard_points,
)
from fermat4.errors import AllZeroCoordinates, NotOnCurve
from fermat4.fields import make_field


def brute_count(p: int) -> int:
    """Projective solutions of x^4 + y^4 = z^4 over F_p by direct enumeration."""
    sols = {
        (x, y, z)
        for x, y, z in itertools.product(range(p), repeat=3)
        if (x, y, z) != (0, 0, 0) and (x**4 + y**4 - z**4) % p == 0
    }
    return len(sols) // (p - 1)


@pytest.mark.parametrize("p", [3, 5, 13, 17, 73])
def test_point_count_matches_brute_force(p):
    assert len(enumerate_points(fermat_quartic(make_field({"kind": "prime", "p": p})))) == brute_count(p)


def test_small_field_counts():
    assert [len(enumerate_points(fermat_quartic(make_field(f)))) for f in ("F3", "F9", "F27")] == [4, 28, 28]


def test_standard_points(ws73, wsq):
    for ws in (ws73, wsq):
        assert len(ws.points) == 15
        assert len(set(ws.points.values())) == 15
        assert all(is_smooth_at(ws.curve, p) for p in ws.points.values())


def test_normalization_is_projective(ws73):
    F = ws73.field
    c = ws73.curve
    p = c.point(F(0), F(27), F(1))
    assert c.point(F(0), F(27) * 5, F(5)) == p
    with pytest.raises(NotOnCurve):
        c.point(F(1), F(1), F(1))
    with pytest.raises(AllZeroCoordinates):
        c.point(F(0), F(0), F(0))


def test_cusp_tangent_contact_order(ws73, wsq):
    for ws in (ws73, wsq):
        X, Y, Z = ws.curve.variables()
        assert ord_at(ws.pt("A0"), Y - Z) == 4
        assert ord_at(ws.pt("B0"), X - Z) == 4
        assert ord_at(ws.pt("A0"), X) == 1
        assert ord_at(ws.pt("B0"), X) == 0
        assert ord_at(ws.pt("C0"), Z) == 1


def test_divisor_of_line_has_degree_four(ws73):
    X, Y, Z = ws73.curve.variables()
    # these lines meet the curve only in F_73-points
    for form in (X, Y, Z, X - Y, Y - Z):
        assert sum(ord_at(p, form) for p in enumerate_points(ws73.curve)) == 4


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=91))
def test_branch_series_satisfies_curve(ws73, k):
    p = enumerate_points(ws73.curve)[k]
    b = branch(p, 12)
    s = b.form_series(ws73.curve.form)
    assert all(x == 0 for x in s[: b.precision])


def test_eval_ord0_ratio(ws73):
    X, Y, Z = ws73.curve.variables()
    F = ws73.field
    assert eval_ord0(ws73.pt("A0"), Z, Z) == F(1)
    p = ws73.pt("P1")
    x, y, z = p.elements()
    assert eval_ord0(p, X, Z) == x / z
