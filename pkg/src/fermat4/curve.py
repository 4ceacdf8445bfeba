"""Plane quartic geometry: homogeneous forms, points, branch expansions, valuations."""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Sequence

from .errors import (
    AllZeroCoordinates,
    ChartFailure,
    InfiniteField,
    NotOnCurve,
    OrderMismatch,
    PrecisionExhausted,
    SingularPoint,
)
from .fields import Field, FieldElement, FieldHom

START_PRECISION = 16
MAX_PRECISION = 256


class Form:
    """Homogeneous polynomial in X, Y, Z with coefficients stored as field raws.

    ``terms`` maps exponent triples ``(a, b, c)`` (for ``X^a Y^b Z^c``) to
    nonzero raws.  The zero form has no terms and degree ``None``.
    """

    __slots__ = ("field", "terms", "_degree")

    def __init__(self, field: Field, terms: dict, degree: int | None = None):
        clean = {}
        for e, c in terms.items():
            if not field.is_zero(c):
                clean[tuple(e)] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous (degrees {sorted(degs)})")
        self.field = field
        self.terms = clean
        self._degree = degs.pop() if degs else degree

    # -- constructors ---------------------------------------------------------
    @classmethod
    def variable(cls, field: Field, index: int) -> "Form":
        e = [0, 0, 0]
        e[index] = 1
        return cls(field, {tuple(e): field.one})

    @classmethod
    def constant(cls, field: Field, value) -> "Form":
        return cls(field, {(0, 0, 0): field.coerce(value)}, 0)

    @classmethod
    def variables(cls, field: Field) -> tuple["Form", "Form", "Form"]:
        return cls.variable(field, 0), cls.variable(field, 1), cls.variable(field, 2)

    @classmethod
    def product(cls, field: Field, forms: Iterable["Form"]) -> "Form":
        out = cls.constant(field, 1)
        for f in forms:
            out = out * f
        return out

    # -- properties -----------------------------------------------------------
    @property
    def degree(self) -> int | None:
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> FieldElement:
        return self.field.elem(self.terms.get(tuple(exps), self.field.zero))

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Form":
        if isinstance(other, Form):
            if other.field != self.field:
                raise ValueError("forms over different fields")
            return other
        return Form.constant(self.field, other)

    def __add__(self, other) -> "Form":
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out[e], c) if e in out else c
        return Form(F, out, self._degree if self._degree is not None else other._degree)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        F = self.field
        return Form(F, {e: F.neg(c) for e, c in self.terms.items()}, self._degree)

    def __sub__(self, other) -> "Form":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Form":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Form":
        F = self.field
        if not isinstance(other, Form):
            c = F.coerce(other)
            return Form(F, {e: F.mul(c, v) for e, v in self.terms.items()}, self._degree)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                p = F.mul(c1, c2)
                out[e] = F.add(out[e], p) if e in out else p
        deg = None
        if self._degree is not None and other._degree is not None:
            deg = self._degree + other._degree
        return Form(F, out, deg)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Form":
        out = Form.constant(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Form) and other.field == self.field and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- evaluation -----------------------------------------------------------
    def evaluate_raw(self, coords: Sequence):
        F = self.field
        acc = F.zero
        for (a, b, c), coef in self.terms.items():
            t = coef
            if a:
                t = F.mul(t, F.pow(coords[0], a))
            if b:
                t = F.mul(t, F.pow(coords[1], b))
            if c:
                t = F.mul(t, F.pow(coords[2], c))
            acc = F.add(acc, t)
        return acc

    def __call__(self, *coords) -> FieldElement:
        raws = [self.field.coerce(c) for c in coords]
        return self.field.elem(self.evaluate_raw(raws))

    def derivative(self, index: int) -> "Form":
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[index]:
                ne = list(e)
                ne[index] -= 1
                out[tuple(ne)] = F.mul(F.from_int(e[index]), c)
        deg = None if self._degree is None else max(self._degree - 1, 0)
        return Form(F, out, deg)

    def map_coefficients(self, hom: FieldHom | None = None, target: Field | None = None, fn=None) -> "Form":
        """Image under a field homomorphism (``hom``) or a raw-level map ``fn`` into ``target``."""
        if hom is not None:
            target = hom.target
            fn = hom.apply_raw
        return Form(target, {e: fn(c) for e, c in self.terms.items()}, self._degree)

    def substitute(self, images: Sequence["Form"]) -> "Form":
        """Compose with a linear change of variables ``X -> images[0]`` etc."""
        F = self.field
        out = Form(F, {}, None)
        for (a, b, c), coef in self.terms.items():
            term = Form.constant(F, F.elem(coef))
            term = term * images[0] ** a * images[1] ** b * images[2] ** c
            out = out + term
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip("XYZ", e) if k
            )
            coef = self.field.elem(self.terms[e])
            parts.append(f"({coef!r})*{mono}" if mono else f"({coef!r})")
        return " + ".join(parts)


def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Exponent triples of the given degree, in a fixed (lexicographic descending) order."""
    if degree < 0:
        return []
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


class PlaneCurve:
    """Plane curve ``form = 0``; carries a write-once memo of branch expansions."""

    def __init__(self, field: Field, form: Form):
        if form.is_zero() or form.degree != 4:
            raise ValueError("curve form must be a nonzero homogeneous quartic")
        self.field = field
        self.form = form
        self.partials = tuple(form.derivative(i) for i in range(3))
        self._branches: dict = {}

    def __eq__(self, other) -> bool:
        return other is self or (
            isinstance(other, PlaneCurve) and other.field == self.field and other.form == self.form
        )

    def __hash__(self) -> int:
        return hash(self.form)

    def __repr__(self) -> str:
        return f"PlaneCurve({self.form!r} over {self.field})"

    def variables(self) -> tuple[Form, Form, Form]:
        return Form.variables(self.field)

    def point(self, *coords, check: bool = True) -> "CurvePoint":
        raws = tuple(self.field.coerce(c) for c in coords)
        return CurvePoint.from_raws(self, raws, check=check)


def fermat_quartic(field: Field) -> PlaneCurve:
    X, Y, Z = Form.variables(field)
    return PlaneCurve(field, X**4 + Y**4 - Z**4)


def normalize_raws(field: Field, coords: Sequence) -> tuple:
    for i in (2, 1, 0):
        if not field.is_zero(coords[i]):
            inv = field.inv(coords[i])
            out = [field.mul(c, inv) for c in coords]
            out[i] = field.one
            return tuple(out)
    raise AllZeroCoordinates("all coordinates are zero")


class CurvePoint:
    """Projective point of a plane curve, normalized so the last nonzero coordinate is 1."""

    __slots__ = ("curve", "coords", "_hash")

    def __init__(self, curve: PlaneCurve, coords: tuple):
        self.curve = curve
        self.coords = coords
        self._hash = hash(coords)

    @classmethod
    def from_raws(cls, curve: PlaneCurve, raws: Sequence, check: bool = True) -> "CurvePoint":
        coords = normalize_raws(curve.field, raws)
        if check and not curve.field.is_zero(curve.form.evaluate_raw(coords)):
            shown = [curve.field.elem(c) for c in coords]
            raise NotOnCurve(f"{shown} is not on {curve}")
        return cls(curve, coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CurvePoint)
            and self.coords == other.coords
            and (self.curve is other.curve or self.curve == other.curve)
        )

    def __hash__(self) -> int:
        return self._hash

    @property
    def field(self) -> Field:
        return self.curve.field

    def elements(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        F = self.curve.field
        return tuple(F.elem(c) for c in self.coords)

    @property
    def chart(self) -> int:
        F = self.curve.field
        for i in (2, 1, 0):
            if not F.is_zero(self.coords[i]):
                return i
        raise ChartFailure("point has no nonzero coordinate")

    def sort_key(self):
        F = self.curve.field
        return tuple(k for c in self.coords for k in F.sort_key(c))

    def to_json(self):
        F = self.curve.field
        return [F.to_json(c) for c in self.coords]

    def __lt__(self, other: "CurvePoint") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return "[" + " : ".join(repr(c) for c in self.elements()) + "]"


def contains(curve: PlaneCurve, coords: Sequence) -> bool:
    raws = [curve.field.coerce(c) for c in coords]
    raws = normalize_raws(curve.field, raws)
    return curve.field.is_zero(curve.form.evaluate_raw(raws))


def is_smooth_at(curve: PlaneCurve, point: CurvePoint) -> bool:
    F = curve.field
    return any(not F.is_zero(d.evaluate_raw(point.coords)) for d in curve.partials)


def standard_points(curve: PlaneCurve) -> dict[str, CurvePoint]:
    """Cusps A_i, B_i, C_i and, when 2^(1/4) is available, P1, P2, P3."""
    F = curve.field
    z8 = F.named("zeta8")
    z4 = F.named("zeta4")
    one, zero = F(1), F(0)
    pts: dict[str, CurvePoint] = {}
    for i in range(4):
        pts[f"A{i}"] = curve.point(zero, z4**i, one)
    for i in range(4):
        pts[f"B{i}"] = curve.point(z4**i, zero, one)
    for i in range(4):
        pts[f"C{i}"] = curve.point(z8 * z4**i, one, zero)
    if F.has("fourth_root_2"):
        r = F.named("fourth_root_2")
        pts["P1"] = curve.point(r * z4, z8, one)
        pts["P2"] = curve.point(z8, r * z4, one)
        pts["P3"] = curve.point(r.inv(), r.inv(), one)
    return pts


def enumerate_points(curve: PlaneCurve) -> list[CurvePoint]:
    F = curve.field
    if not F.is_finite:
        raise InfiniteField(f"{F} is infinite")
    elems = list(F.iter_raws())
    one, zero = F.one, F.zero
    form = curve.form
    candidates = itertools.chain(
        ((x, y, one) for x in elems for y in elems),
        ((x, one, zero) for x in elems),
        [(one, zero, zero)],
    )
    pts = [CurvePoint(curve, c) for c in candidates if F.is_zero(form.evaluate_raw(c))]
    pts.sort(key=CurvePoint.sort_key)
    return pts


# ---------------------------------------------------------------------------
# branch expansions
# ---------------------------------------------------------------------------


class LocalExpansion:
    """Branch of the curve at a smooth point.

    The chart coordinate is 1; the parameter coordinate is ``p0 + t``; the
    dependent coordinate is the power series ``series``, known mod ``t^precision``.
    """

    def __init__(self, center: CurvePoint, chart: int, parameter: int, dependent: int, series: list, precision: int):
        self.center = center
        self.chart = chart
        self.parameter = parameter
        self.dependent = dependent
        self.series = series
        self.precision = precision
        self._powers: dict[int, list[list]] = {}
        self._mono: dict = {}

    def coordinate_series(self, index: int) -> list:
        F = self.center.curve.field
        n = self.precision
        if index == self.chart:
            return [F.one] + [F.zero] * (n - 1)
        if index == self.parameter:
            out = [self.center.coords[index], F.one] + [F.zero] * (n - 2)
            return out[:n]
        return list(self.series)

    def _power(self, index: int, e: int) -> list:
        """``coordinate^e`` as a series (parameter powers are short polynomials)."""
        table = self._powers.setdefault(index, [])
        F = self.center.curve.field
        n = self.precision
        if not table:
            table.append([F.one] + [F.zero] * (n - 1))
        while len(table) <= e:
            table.append(_series_mul(F, table[-1], self.coordinate_series(index), n))
        return table[e]

    def monomial_series(self, exps: tuple) -> list:
        s = self._mono.get(exps)
        if s is None:
            F = self.center.curve.field
            n = self.precision
            s = None
            for idx in range(3):
                if idx == self.chart or not exps[idx]:
                    continue
                p = self._power(idx, exps[idx])
                s = p if s is None else _series_mul(F, s, p, n)
            if s is None:
                s = [F.one] + [F.zero] * (n - 1)
            self._mono[exps] = s
        return s

    def form_series(self, form: Form) -> list:
        F = self.center.curve.field
        n = self.precision
        acc = [F.zero] * n
        for e, c in form.terms.items():
            m = self.monomial_series(e)
            for k in range(n):
                if not F.is_zero(m[k]):
                    acc[k] = F.add(acc[k], F.mul(c, m[k]))
        return acc


def _series_mul(F: Field, a: list, b: list, n: int) -> list:
    out = [F.zero] * n
    la = max((i for i in range(min(len(a), n)) if not F.is_zero(a[i])), default=-1)
    lb = max((i for i in range(min(len(b), n)) if not F.is_zero(b[i])), default=-1)
    for i in range(la + 1):
        x = a[i]
        if F.is_zero(x):
            continue
        for j in range(min(lb + 1, n - i)):
            y = b[j]
            if not F.is_zero(y):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _compute_expansion(point: CurvePoint, precision: int) -> LocalExpansion:
    curve = point.curve
    F = curve.field
    if not is_smooth_at(curve, point):
        raise SingularPoint(f"{point} is singular")
    chart = point.chart
    u, v = [i for i in range(3) if i != chart]
    if not F.is_zero(curve.partials[v].evaluate_raw(point.coords)):
        param, dep = u, v
    elif not F.is_zero(curve.partials[u].evaluate_raw(point.coords)):
        param, dep = v, u
    else:
        raise SingularPoint(f"{point}: both affine partials vanish")
    p0, d0 = point.coords[param], point.coords[dep]
    fd = F.inv(curve.partials[dep].evaluate_raw(point.coords))
    # affine terms: (param exponent, dependent exponent) -> coefficient
    aff: dict = {}
    for e, c in curve.form.terms.items():
        key = (e[param], e[dep])
        aff[key] = F.add(aff[key], c) if key in aff else c
    max_b = max(b for _, b in aff)
    # ppow[a][i] = coefficient of t^i in (p0 + t)^a
    ppow = {a: [F.mul(F.from_int(comb(a, i)), F.pow(p0, a - i)) for i in range(a + 1)] for a, _ in aff}
    n = precision
    d = [d0] + [F.zero] * (n - 1)
    dpow = [[F.one] + [F.zero] * (n - 1)]
    for _ in range(max_b):
        dpow.append(_series_mul(F, dpow[-1], d, n))
    # linear coefficient of d_k in (d^b)[k] is b * d0^(b-1)
    lin = [F.zero] + [F.mul(F.from_int(b), F.pow(d0, b - 1)) for b in range(1, max_b + 1)]
    for k in range(1, n):
        # (d^b)[k] with d_k = 0 tentatively; recompute coefficient k of every power
        for b in range(1, max_b + 1):
            prev = dpow[b - 1]
            acc = F.zero
            for i in range(1, k):
                if not F.is_zero(d[i]) and not F.is_zero(prev[k - i]):
                    acc = F.add(acc, F.mul(d[i], prev[k - i]))
            acc = F.add(acc, F.mul(d0, prev[k]))
            dpow[b][k] = acc
        ck = F.zero
        for (a, b), coef in aff.items():
            pa = ppow[a]
            s = F.zero
            db = dpow[b]
            for i in range(min(a, k) + 1):
                if not F.is_zero(db[k - i]):
                    s = F.add(s, F.mul(pa[i], db[k - i]))
            if not F.is_zero(s):
                ck = F.add(ck, F.mul(coef, s))
        dk = F.neg(F.mul(ck, fd))
        d[k] = dk
        if not F.is_zero(dk):
            for b in range(1, max_b + 1):
                dpow[b][k] = F.add(dpow[b][k], F.mul(lin[b], dk))
    return LocalExpansion(point, chart, param, dep, d, n)


def branch(point: CurvePoint, precision: int = START_PRECISION) -> LocalExpansion:
    """Memoized expansion with at least ``precision`` terms (possibly more)."""
    cache = point.curve._branches
    exp = cache.get(point.coords)
    if exp is None or exp.precision < precision:
        size = START_PRECISION
        while size < precision:
            size *= 2
        if size > MAX_PRECISION:
            raise PrecisionExhausted(f"requested precision {precision} exceeds {MAX_PRECISION}")
        exp = _compute_expansion(point, size)
        cache[point.coords] = exp
    return exp


def local_expansion(point: CurvePoint, precision: int = START_PRECISION) -> LocalExpansion:
    """Branch expansion at ``point`` with exactly ``precision`` terms."""
    if precision < 1:
        raise ValueError("precision must be positive")
    exp = branch(point, precision)
    if exp.precision == precision:
        return exp
    trunc = LocalExpansion(point, exp.chart, exp.parameter, exp.dependent, exp.series[:precision], precision)
    return trunc


def leading_term(point: CurvePoint, form: Form, cap: int = MAX_PRECISION) -> tuple[int, object]:
    """(valuation, leading coefficient raw) of ``form`` along the branch at ``point``."""
    if form.is_zero():
        raise PrecisionExhausted("zero form has infinite order")
    F = point.curve.field
    if not F.is_zero(form.evaluate_raw(point.coords)):
        return 0, form.evaluate_raw(point.coords)
    prec = START_PRECISION
    while True:
        exp = branch(point, prec)
        prec = exp.precision
        s = exp.form_series(form)
        for k, c in enumerate(s):
            if not F.is_zero(c):
                return k, c
        if prec >= cap:
            raise PrecisionExhausted(f"order of form at {point} is >= {cap}")
        prec *= 2


def ord_at(point: CurvePoint, form: Form) -> int:
    return leading_term(point, form)[0]


def eval_ord0(point: CurvePoint, num: Form, den: Form) -> FieldElement:
    """Value at ``point`` of ``num/den`` when the two forms have equal order there."""
    if num.degree != den.degree:
        raise OrderMismatch("numerator and denominator degrees differ")
    on, cn = leading_term(point, num)
    od, cd = leading_term(point, den)
    if on != od:
        raise OrderMismatch(f"net order {on - od} at {point}")
    F = point.curve.field
    return F.elem(F.div(cn, cd))
