"""Explicit forms with known divisors on the Fermat quartic.

Constants are polynomials in ``delta`` with integer coefficients, so they can
be built in any field with a registered ``delta`` (Q(delta) or F_73).
"""

from __future__ import annotations

from .curve import Form, PlaneCurve
from .fields import FieldElement

# integer coefficient vectors, constant term first
KEY_CONSTANTS = {
    "c1": (7, 0, 1, 0, -2, 0, 1),
    "c2": (-13, 0, 20, 0, -10, 0, 2),
    "c3": (-24, -86, 63, 166, -36, -86, 9, 22),
    "c4": (-14, 46, -20, 22, 7, -26, -2, 10),
    "c5": (-44, 0, 154, 0, -77, 0, 22),
}

PAIRING_CONSTANTS = {
    "c1'": (93, 452, 63, -496, -36, 224, 9, -52),
    "c2'": (-58, 88, 449, 736, -280, -476, 80, 148),
    "c3'": (-160, -312, 515, 1476, -253, -780, 71, 216),
    "c4'": (-365, 0, 730, 0, -365, 0, 73),
    "c5'": (203, 568, 728, -824, -553, 352, 158, -80),
}


def delta_poly(curve: PlaneCurve, coeffs) -> FieldElement:
    F = curve.field
    d = F.named("delta")
    acc = F(0)
    for c in reversed(coeffs):
        acc = acc * d + c
    return acc


def key_forms(curve: PlaneCurve) -> tuple[Form, Form]:
    """(g1, g2): cubics whose quotient has divisor 2(P1+P2+P3) - A1 - 3A2 + 4B0 - B1 - 3B2 - C1 - C2."""
    c = {k: delta_poly(curve, v) for k, v in KEY_CONSTANTS.items()}
    X, Y, Z = curve.variables()
    g1 = (
        3 * (X**3 + Y**3 + Z**3)
        + c["c1"] * (X**2 * Y + X**2 * Z + X * Y**2 + X * Y * Z + Y**2 * Z - Z**3)
        - c["c2"] * (X * Y * Z + X * Z**2 + Y * Z**2 + Z**3)
    )
    g2 = (
        33 * (X**3 + X * Y**2 + X * Y * Z - X * Z**2 - Y**2 * Z - Y * Z**2)
        + c["c3"] * (-(X**2) * Y + X * Y * Z)
        + c["c4"] * (X**2 * Z + X * Y * Z - X * Z**2 - Y * Z**2)
        + c["c5"] * (X * Z**2 - Z**3)
    )
    return g1, g2


def f6_prime(curve: PlaneCurve) -> Form:
    """Cubic with divisor 4(P1 + P2 + P3)."""
    c = {k: delta_poly(curve, v) for k, v in PAIRING_CONSTANTS.items()}
    X, Y, Z = curve.variables()
    return (
        219 * (X**3 + Y**3)
        + c["c1'"] * (X**2 * Y + X * Y**2)
        + c["c2'"] * (X**2 * Z + Y**2 * Z)
        + c["c3'"] * (X * Z**2 + Y * Z**2)
        + c["c4'"] * Z**3
        + c["c5'"] * X * Y * Z
    )


def pairing_lines(curve: PlaneCurve) -> dict[str, Form]:
    """f1..f5 and g1: lines with divisors 4A1, 4A2, 4B1, 4B2, 4C1 and 4B0."""
    F = curve.field
    z8 = F.named("zeta8")
    z4 = F.named("zeta4")
    X, Y, Z = curve.variables()
    return {
        "f1": Y - z4 * Z,
        "f2": Y + Z,
        "f3": X - z4 * Z,
        "f4": X + Z,
        "f5": X - z8**3 * Y,
        "g1": X - Z,
    }
