import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat4.errors import CompositeModulus, DivisionByZero, NotARoot
from fermat4.fields import (
    census_field,
    galois_generators,
    identity_automorphism,
    make_automorphism,
    make_field,
    reduction_map,
)

QD = make_field("Q_delta")
SIGMA, TAU = galois_generators(QD)
RED = reduction_map(QD, make_field("F73"))

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
qdelta = st.lists(small, min_size=8, max_size=8).map(lambda c: QD.elem(QD.from_coeffs(c)))


def test_prime_field_basics():
    F = make_field("F73")
    assert F(10) ** 8 == F(1) and F(10) ** 4 == F(-1)
    assert F.named("zeta8") == F(10) and F.named("fourth_root_2") == F(18)
    assert F.named("zeta4") == F(27) and F.named("delta") == F(50)
    assert F(18) ** 4 == F(2)
    with pytest.raises(DivisionByZero):
        F(0).inv()


def test_composite_modulus_rejected():
    with pytest.raises(CompositeModulus):
        make_field({"kind": "prime", "p": 9})


def test_small_extensions_have_expected_order():
    assert make_field("F9").order == 9
    assert make_field("F27").order == 27
    F9 = make_field("F9")
    assert sum(1 for _ in F9.iter_raws()) == 9


def test_distinguished_elements_of_qdelta():
    z8, r, d = QD.named("zeta8"), QD.named("fourth_root_2"), QD.named("delta")
    assert z8**4 == QD(-1) and z8**8 == QD(1)
    assert r**4 == QD(2)
    assert 3 * z8 == 2 * d**6 - 7 * d**4 + 11 * d**2 - 1
    assert 3 * r == d**7 - 5 * d**5 + 10 * d**3 - 8 * d
    sqrt2 = z8 + z8**7
    assert d * d == (2 - sqrt2) * (1 + z8 * z8) / 2


@settings(max_examples=40, deadline=None)
@given(qdelta, qdelta)
def test_automorphisms_are_ring_homomorphisms(a, b):
    for g in (SIGMA, TAU):
        assert g(a * b) == g(a) * g(b)
        assert g(a + b) == g(a) + g(b)
    assert RED(a * b) == RED(a) * RED(b)


@settings(max_examples=25, deadline=None)
@given(qdelta)
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inv() == QD(1)


def test_generator_orders_and_actions():
    ident = identity_automorphism(QD)
    d = QD.named("delta")
    z8, r = QD.named("zeta8"), QD.named("fourth_root_2")
    assert SIGMA(z8) == -z8 and SIGMA(r) == r * z8 * z8
    assert TAU(z8) == z8**7 and TAU(r) == r
    s2 = SIGMA * SIGMA
    assert s2(d) != d and (s2 * s2)(d) == ident(d)
    assert (TAU * TAU)(d) == d
    # dihedral relation tau sigma tau = sigma^3
    assert (TAU * SIGMA * TAU)(d) == (SIGMA * SIGMA * SIGMA)(d)


def _numeric(a, delta):
    return sum(complex(c) * delta**k for k, c in enumerate(QD.coeff_raws(a.raw)))


def test_sigma_of_delta_numeric_oracle():
    # embedding with zeta8 = exp(i pi/4), 2^(1/4) real positive
    z8 = cmath.exp(1j * cmath.pi / 4)
    r = 2**0.25

    def delta_from(z, root):
        y = (2 - (z + z**7)) * (1 + z * z) / 2
        return 3 * root / (y**3 - 5 * y**2 + 10 * y - 8)

    delta = delta_from(z8, r)
    poly = [Fraction(c) for c in (1, 0, -4, 0, 8, 0, -4, 0, 1)]
    assert abs(sum(float(c) * delta**k for k, c in enumerate(poly))) < 1e-9
    expected = {"sigma": delta_from(-z8, r * 1j), "tau": delta_from(z8**7, r)}
    for name, g in (("sigma", SIGMA), ("tau", TAU)):
        assert abs(_numeric(g(QD.named("delta")), delta) - expected[name]) < 1e-9


def test_reduction_sends_names_to_f73_values():
    F = make_field("F73")
    for n in ("zeta8", "fourth_root_2", "delta"):
        assert RED(QD.named(n)) == F.named(n)


def test_non_root_rejected():
    with pytest.raises(NotARoot):
        make_automorphism(QD, QD.named("zeta8"))


@pytest.mark.parametrize("label", ["Q_fourthroot2_zeta8", "Q_zeta3_zeta8", "Q_sqrtm7_zeta8"])
def test_census_fields(label):
    F = census_field(label)
    w = F.elem(F.generator())
    z8 = F.named("zeta8")
    if label == "Q_fourthroot2_zeta8":
        assert w * w == z8 + z8**7
    elif label == "Q_zeta3_zeta8":
        assert w * w + w + 1 == F(0)
    else:
        assert w * w - w + 2 == F(0)
