import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat4.cache import ClassCache
from fermat4.census import (
    CuspCoordinates,
    _family_points,
    effective_class_count,
    elliptic_count,
    faddeev_maps_check,
    from_weierstrass,
    l_polynomial,
    l_polynomial_over_square,
    quadratic_points_census,
    to_weierstrass,
    zeta_check,
)
from fermat4.fields import make_field


def test_l_polynomial_of_an_elliptic_curve():
    # y^2 = x^3 + x over F_5 has 4 points, trace 2; L = 1 - 2T + 5T^2
    assert elliptic_count(5, 1) == 4
    L = l_polynomial(5, [4], genus=1)
    assert L == [1, -2, 5]
    # over F_25: trace a^2 - 2q = -6, so 32 points and L = 1 + 6T + 25T^2
    assert l_polynomial_over_square(L) == [1, 6, 25]
    F25 = make_field({"kind": "extension", "base": {"kind": "prime", "p": 5}, "minpoly": [2, 0, 1], "name": "s"})
    elems = [F25.elem(r) for r in F25.iter_raws()]
    squares = {}
    for y in elems:
        squares[y * y] = squares.get(y * y, 0) + 1
    brute = 1 + sum(squares.get(x**3 + x, 0) for x in elems)
    assert brute == 32
    assert sum(l_polynomial_over_square(L)) == 32


def test_zeta_check_passes():
    rep = zeta_check()
    assert rep.passed, rep.to_text()


def test_elliptic_counts_brute():
    for a in (4, -4):
        pts = 1 + sum(1 for x, y in itertools.product(range(3), repeat=2) if (y * y - x**3 - a * x) % 3 == 0)
        assert elliptic_count(3, a) == pts == 4


def test_quadratic_points():
    records, rep = quadratic_points_census()
    assert rep.passed, rep.to_text()
    assert len(records) == 188
    assert sum(1 for r in records if r.pair_id is not None) == 176


def test_alpha_family_orbit():
    _, pts, alt = _family_points("Q_sqrtm7_zeta8")
    assert len(set(pts)) == 96 and set(pts) == set(alt)


def test_faddeev_maps():
    rep = faddeev_maps_check()
    assert rep.passed, rep.to_text()
    assert any("1 + X^4" in n for n in rep.notes)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=72), st.sampled_from([1, -1]))
def test_weierstrass_round_trip(a, lam):
    F = make_field("F73")
    a = F(a)
    lam = F(lam)
    for b in F.iter_raws():
        b = F(b)
        # the quartic b^2 = 1 - lambda a^4 maps to v^2 = u^3 + 4 lambda u
        if b * b == 1 - lam * a**4 and not (1 - b).is_zero():
            u, v = to_weierstrass(a, b, lam)
            assert v * v == u**3 + 4 * lam * u
            if not v.is_zero():
                assert from_weierstrass(u, v, lam) == (a, b)


def test_count_restricted_and_cached(tmp_path, ws73):
    cache = ClassCache(tmp_path / "c.jsonl", ws73.curve)
    subset = list(CuspCoordinates.all())[:200]
    first = effective_class_count("f73", cache, limit=subset)
    second = effective_class_count("f73", cache, limit=subset)
    assert first.effective == second.effective
    assert second.resumed == 200 and second.computed == 0
    assert effective_class_count("f73", limit=[CuspCoordinates((0,) * 6)]).count == 1


def test_parallel_count_matches_serial(ws73):
    subset = list(CuspCoordinates.all())[:300]
    assert effective_class_count("f73", jobs=2, limit=subset).effective == effective_class_count("f73", limit=subset).effective


def test_full_shadow_count():
    assert effective_class_count("f73").count == 166
