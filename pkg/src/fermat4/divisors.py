"""Divisors, the form registry, and Riemann-Roch spaces by interpolation.

A registry entry is a form whose full divisor on the curve is known.  To
compute L(D) we pick registry forms whose product ``h0`` has divisor
``H >= D+``; then ``L(D) = { g/h0 : deg g = deg h0, div(g) >= H - D }`` and
the conditions ``ord_P(g) >= H(P) - D(P)`` are linear in the coefficients of
``g`` (read off from branch expansions).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .curve import (
    CurvePoint,
    Form,
    PlaneCurve,
    branch,
    enumerate_points,
    is_smooth_at,
    leading_term,
    monomials,
    standard_points,
)
from .errors import CurveMismatch, H0Overflow, NotOnCurve, RegistryGap, SingularPoint
from .fields import PrimeField
from . import linalg


class Divisor:
    """Finite formal sum of curve points with nonzero integer weights."""

    __slots__ = ("curve", "weights", "_hash")

    def __init__(self, curve: PlaneCurve, weights: Mapping[CurvePoint, int] | None = None):
        self.curve = curve
        clean: dict[CurvePoint, int] = {}
        for p, w in (weights or {}).items():
            if p.curve is not curve and p.curve != curve:
                raise CurveMismatch(f"{p} is not on {curve}")
            if w:
                clean[p] = clean.get(p, 0) + w
                if not clean[p]:
                    del clean[p]
        self.weights = clean
        self._hash = None

    @classmethod
    def point(cls, p: CurvePoint, weight: int = 1) -> "Divisor":
        return cls(p.curve, {p: weight})

    @classmethod
    def sum(cls, curve: PlaneCurve, parts: Iterable["Divisor"]) -> "Divisor":
        out = cls(curve)
        for d in parts:
            out = out + d
        return out

    def _check(self, other: "Divisor") -> None:
        if other.curve is not self.curve and other.curve != self.curve:
            raise CurveMismatch("divisors on different curves")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        w = dict(self.weights)
        for p, k in other.weights.items():
            w[p] = w.get(p, 0) + k
        return Divisor(self.curve, w)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, {p: -k for p, k in self.weights.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, n: int) -> "Divisor":
        return self.scale(n)

    def scale(self, n: int) -> "Divisor":
        return Divisor(self.curve, {p: n * k for p, k in self.weights.items()})

    def __getitem__(self, p: CurvePoint) -> int:
        return self.weights.get(p, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.weights == other.weights

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.weights.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.weights)

    @property
    def degree(self) -> int:
        return sum(self.weights.values())

    @property
    def support(self) -> list[CurvePoint]:
        return sorted(self.weights, key=CurvePoint.sort_key)

    def items(self) -> list[tuple[CurvePoint, int]]:
        return [(p, self.weights[p]) for p in self.support]

    def positive(self) -> "Divisor":
        return Divisor(self.curve, {p: k for p, k in self.weights.items() if k > 0})

    def negative(self) -> "Divisor":
        return Divisor(self.curve, {p: -k for p, k in self.weights.items() if k < 0})

    def is_effective(self) -> bool:
        return all(k > 0 for k in self.weights.values())

    def map_points(self, fn) -> "Divisor":
        out: dict[CurvePoint, int] = {}
        curve = None
        for p, k in self.weights.items():
            q = fn(p)
            curve = q.curve
            out[q] = out.get(q, 0) + k
        return Divisor(curve or self.curve, out)

    def to_json(self) -> list:
        return [[p.to_json(), k] for p, k in self.items()]

    def __repr__(self) -> str:
        if not self.weights:
            return "0"
        return " + ".join(f"{k}*{p!r}" for p, k in self.items())


def degree(D: Divisor) -> int:
    return D.degree


def support(D: Divisor) -> list[CurvePoint]:
    return D.support


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormRegistryEntry:
    form: Form
    divisor: Divisor
    label: str = ""

    @property
    def degree(self) -> int:
        return self.form.degree


def verify_form_divisor(form: Form, claimed: Divisor) -> bool:
    """True iff ``claimed`` is exactly the divisor of ``form`` on the curve."""
    if not claimed.is_effective() or claimed.degree != 4 * form.degree:
        return False
    return all(leading_term(p, form)[0] == k for p, k in claimed.items())


class Registry:
    """Ordered list of forms with verified divisors; append-only."""

    def __init__(self, curve: PlaneCurve, entries: Iterable[FormRegistryEntry] = (), auto_extend: bool | None = None):
        self.curve = curve
        self.entries: list[FormRegistryEntry] = []
        self._by_point: dict[CurvePoint, list[int]] = {}
        self._lock = threading.Lock()
        self.auto_extend = curve.field.is_finite if auto_extend is None else auto_extend
        for e in entries:
            self.add(e, verify=False)

    def add(self, entry: FormRegistryEntry, verify: bool = True) -> None:
        if verify and not verify_form_divisor(entry.form, entry.divisor):
            raise ValueError(f"registry entry {entry.label or entry.form} has a wrong divisor")
        with self._lock:
            idx = len(self.entries)
            self.entries.append(entry)
            for p in entry.divisor.weights:
                self._by_point.setdefault(p, []).append(idx)

    def __iter__(self) -> Iterator[FormRegistryEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def covers(self, p: CurvePoint) -> bool:
        return p in self._by_point

    def reordered(self, order: Iterable[int]) -> "Registry":
        return Registry(self.curve, [self.entries[i] for i in order], self.auto_extend)

    def ensure_covered(self, p: CurvePoint) -> None:
        if self.covers(p):
            return
        if not self.auto_extend:
            raise RegistryGap(f"no registry form vanishes at {p}")
        entry = split_line_through(p)
        if entry is None:
            raise RegistryGap(f"no split line through {p}")
        with self._lock:
            if self.covers(p):
                return
        self.add(entry, verify=False)


def split_line_through(p: CurvePoint) -> FormRegistryEntry | None:
    """First line through ``p`` (dual coordinates in lexicographic order) meeting the curve in rational points only."""
    curve = p.curve
    F = curve.field
    X, Y, Z = curve.variables()
    elems = list(F.iter_raws())
    duals = itertools.chain(
        ((a, b, F.one) for a in elems for b in elems),
        ((a, F.one, F.zero) for a in elems),
        [(F.one, F.zero, F.zero)],
    )
    pts = None
    for a, b, c in duals:
        val = F.add(F.add(F.mul(a, p.coords[0]), F.mul(b, p.coords[1])), F.mul(c, p.coords[2]))
        if not F.is_zero(val):
            continue
        line = X * F.elem(a) + Y * F.elem(b) + Z * F.elem(c)
        if pts is None:
            pts = enumerate_points(curve)
        on = [q for q in pts if F.is_zero(line.evaluate_raw(q.coords))]
        weights = {q: leading_term(q, line)[0] for q in on}
        if sum(weights.values()) == 4:
            return FormRegistryEntry(line, Divisor(curve, weights), f"line{(a, b, c)}")
    return None


def seed_registry(curve: PlaneCurve, verify: bool = True) -> Registry:
    """Cusp tangent lines, lines through the 2^(+-1/4) points, and the cubic with divisor 4(P1+P2+P3)."""
    from .auxiliary import f6_prime

    F = curve.field
    pts = standard_points(curve)
    X, Y, Z = curve.variables()
    z8 = F.named("zeta8")
    z4 = F.named("zeta4")
    entries: list[FormRegistryEntry] = []
    for i in range(4):
        entries.append(FormRegistryEntry(Y - z4**i * Z, Divisor.point(pts[f"A{i}"], 4), f"tangent A{i}"))
    for i in range(4):
        entries.append(FormRegistryEntry(X - z4**i * Z, Divisor.point(pts[f"B{i}"], 4), f"tangent B{i}"))
    for i in range(4):
        entries.append(FormRegistryEntry(X - z8 * z4**i * Y, Divisor.point(pts[f"C{i}"], 4), f"tangent C{i}"))
    if F.has("fourth_root_2"):
        r = F.named("fourth_root_2")
        rinv = r.inv()
        one = F(1)
        for i in range(4):
            # X = zeta4^i Y  meets the curve where 2 Y^4 = Z^4
            w = {curve.point(z4**i * rinv * z4**j, rinv * z4**j, one): 1 for j in range(4)}
            entries.append(FormRegistryEntry(X - z4**i * Y, Divisor(curve, w), f"line X=i^{i}Y"))
        for j in range(4):
            c = z8 ** (1 + 2 * j)
            # Y = zeta8^(1+2j) Z  meets the curve where X^4 = 2 Z^4
            w = {curve.point(r * z4**i, c, one): 1 for i in range(4)}
            entries.append(FormRegistryEntry(Y - c * Z, Divisor(curve, w), f"line Y=z8^{1 + 2 * j}Z"))
            w = {curve.point(c, r * z4**i, one): 1 for i in range(4)}
            entries.append(FormRegistryEntry(X - c * Z, Divisor(curve, w), f"line X=z8^{1 + 2 * j}Z"))
        if F.has("delta"):
            w = {pts["P1"]: 4, pts["P2"]: 4, pts["P3"]: 4}
            entries.append(FormRegistryEntry(f6_prime(curve), Divisor(curve, w), "f6'"))
    reg = Registry(curve)
    for e in entries:
        reg.add(e, verify=verify)
    return reg


# ---------------------------------------------------------------------------
# Riemann-Roch
# ---------------------------------------------------------------------------


@dataclass
class RRSpaceResult:
    dimension: int
    denominator: Form
    degree_used: int
    numerators: list[Form] = field(default_factory=list)
    covering: list[FormRegistryEntry] = field(default_factory=list)


def choose_covering(D: Divisor, registry: Registry) -> list[FormRegistryEntry]:
    """Greedy multiset of entries whose divisors dominate D+ (best demand per degree, registry order on ties)."""
    demand = {p: k for p, k in D.weights.items() if k > 0}
    for p in demand:
        registry.ensure_covered(p)
    chosen: list[FormRegistryEntry] = []
    while demand:
        best, best_score = None, None
        seen: set[int] = set()
        for p in demand:
            seen.update(registry._by_point.get(p, ()))
        for idx in sorted(seen):
            e = registry.entries[idx]
            covered = sum(min(k, e.divisor[p]) for p, k in demand.items())
            # compare covered/degree without floats
            if best is None or covered * best.degree > best_score * e.degree:
                best, best_score = e, covered
        chosen.append(best)
        for p, k in best.divisor.weights.items():
            if p in demand:
                rest = demand[p] - k
                if rest > 0:
                    demand[p] = rest
                else:
                    del demand[p]
    return chosen


def _reduced_monomials(curve: PlaneCurve, d: int) -> list[tuple[int, int, int]] | None:
    """Monomials of degree d with X-degree < 4: a complement to the multiples of a form monic in X^4."""
    if (4, 0, 0) not in curve.form.terms:
        return None
    return [e for e in monomials(d) if e[0] < 4]


def riemann_roch_space(
    D: Divisor,
    registry: Registry,
    want_basis: bool = False,
    covering: list[FormRegistryEntry] | None = None,
    reduced: bool = True,
) -> RRSpaceResult:
    """Dimension (and optionally a basis) of L(D).

    With ``reduced`` the unknown form ranges over monomials of X-degree < 4,
    which represent degree-d forms modulo multiples of the curve equation;
    otherwise all degree-d monomials are used and the (d-2)(d-3)/2 multiples
    of the curve form are subtracted from the null space dimension.
    """
    curve = D.curve
    F = curve.field
    if covering is None:
        covering = choose_covering(D, registry)
    H = Divisor.sum(curve, (e.divisor for e in covering))
    d = sum(e.degree for e in covering)
    h0form = Form.product(F, (e.form for e in covering))
    mons = _reduced_monomials(curve, d) if reduced else None
    correction = 0
    if mons is None:
        mons = monomials(d)
        correction = (d - 2) * (d - 3) // 2 if d >= 4 else 0
    need = H - D
    rows: list[list] = []
    for p in sorted(set(H.weights) | set(D.weights), key=CurvePoint.sort_key):
        m = need[p]
        if m <= 0:
            continue
        b = branch(p, m)
        series = [b.monomial_series(e) for e in mons]
        for k in range(m):
            rows.append([s[k] for s in series])
    if want_basis:
        null = linalg.nullspace(F, rows, len(mons))
        nullity = len(null)
    else:
        nullity = len(mons) - linalg.rank(F, rows, len(mons))
    dim = nullity - correction
    result = RRSpaceResult(dim, h0form, d, [], covering)
    if want_basis:
        result.numerators = _basis_mod_curve(curve, null, mons, d, correction)
    return result


def _basis_mod_curve(curve: PlaneCurve, null: list[list], mons: list, d: int, correction: int) -> list[Form]:
    F = curve.field
    forms = [Form(F, dict(zip(mons, v)), d) for v in null]
    if not correction:
        return forms
    # drop the span of curve-form multiples: keep null vectors independent of it
    idx = {e: i for i, e in enumerate(mons)}
    multiples = []
    for e in monomials(d - 4):
        g = curve.form * Form(F, {e: F.one}, d - 4)
        vec = [F.zero] * len(mons)
        for ee, c in g.terms.items():
            vec[idx[ee]] = c
        multiples.append(vec)
    base_rank = linalg.rank(F, multiples, len(mons))
    kept, rows = [], list(multiples)
    for v, f in zip(null, forms):
        if linalg.rank(F, rows + [v], len(mons)) > base_rank + len(kept):
            rows.append(v)
            kept.append(f)
    return kept


def h0(D: Divisor, registry: Registry) -> int:
    return riemann_roch_space(D, registry).dimension


def is_principal(D: Divisor, registry: Registry) -> bool:
    if D.degree != 0:
        return False
    if not D.weights:
        return True
    return h0(D, registry) == 1


def linearly_equivalent(D1: Divisor, D2: Divisor, registry: Registry) -> bool:
    if D1.degree != D2.degree:
        return False
    return is_principal(D1 - D2, registry)


def is_effective_class(D: Divisor, registry: Registry) -> bool:
    if D.degree < 0:
        return False
    return h0(D, registry) >= 1


def h0_degree2(D: Divisor, registry: Registry) -> int:
    """h0 of a degree-2 divisor; a value above 1 would contradict non-hyperellipticity."""
    value = h0(D, registry)
    if value >= 2:
        raise H0Overflow(f"h0 = {value} for degree-2 divisor {D}")
    return value
