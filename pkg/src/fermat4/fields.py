"""Exact arithmetic in Q, prime fields and simple algebraic extensions.

Every field is an immutable handle; elements are stored in a canonical *raw*
form that the handle knows how to combine:

* ``RationalField``  -- ``fractions.Fraction``
* ``PrimeField``     -- ``int`` in ``[0, p)``
* ``NumberField``    -- ``(numerators, denominator)``: an extension of Q by a
  monic integral minimal polynomial, coefficients over a common positive
  denominator with no common factor
* ``ExtensionField`` -- ``tuple`` of base-field raws (generic tower step)

Heavy loops (linear algebra, power series) work on raws through the handle's
methods; ``FieldElement`` wraps a raw with operator overloading for everything
else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Any, Callable, Iterator, Sequence

from .errors import (
    ActionMismatch,
    CompositeModulus,
    DivisionByZero,
    MissingDistinguishedElement,
    NonMonicMinpoly,
    NotARoot,
    OwnerMismatch,
    ZeroDivisorEncountered,
)

DELTA_MINPOLY = (1, 0, -4, 0, 8, 0, -4, 0, 1)  # x^8 - 4x^6 + 8x^4 - 4x^2 + 1
ZETA8_MINPOLY = (1, 0, 0, 0, 1)  # x^4 + 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of all field handles (operations act on raws)."""

    kind: str = ""
    is_finite: bool = False

    # -- element construction -------------------------------------------------
    def elem(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def __call__(self, value) -> "FieldElement":
        return self.elem(self.coerce(value))

    def coerce(self, value):
        """Return the raw of ``value`` (int, Fraction, element of this field or of a subfield)."""
        if isinstance(value, FieldElement):
            if value.field == self:
                return value.raw
            return self.embed(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def embed(self, value: "FieldElement"):
        raise OwnerMismatch(f"{value.field} does not embed into {self}")

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def dot(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    # -- distinguished elements -----------------------------------------------
    @cached_property
    def names(self) -> dict[str, Any]:
        table = dict(self._base_names())
        _derive_names(self, table)
        return table

    def _base_names(self) -> dict[str, Any]:
        return {}

    def named(self, name: str) -> "FieldElement":
        try:
            return self.elem(self.names[name])
        except KeyError:
            raise MissingDistinguishedElement(f"{name} is not registered in {self}") from None

    def has(self, name: str) -> bool:
        return name in self.names

    def eval_poly(self, coeffs: Sequence, x):
        """Horner evaluation of a raw-coefficient polynomial (low degree first)."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


def _derive_names(field: Field, table: dict) -> None:
    if "zeta8" in table:
        z8 = table["zeta8"]
        table.setdefault("zeta4", field.mul(z8, z8))
        table.setdefault("sqrt2", field.add(z8, field.pow(z8, 7)))
    if "alpha" in table:
        table.setdefault("sqrt_m7", field.sub(field.add(table["alpha"], table["alpha"]), field.one))


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalField(Field):
    kind = "rationals"
    is_finite = False

    @property
    def degree(self) -> int:
        return 1

    @property
    def characteristic(self) -> int:
        return 0

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, q: Fraction):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def to_json(self, a):
        return [a.numerator, a.denominator]

    def from_json(self, obj):
        return Fraction(obj[0], obj[1])

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def __str__(self) -> str:
        return "Q"


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    kind = "prime"
    is_finite = True

    @property
    def degree(self) -> int:
        return 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, q: Fraction):
        den = q.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator {q.denominator} vanishes mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def iter_raws(self) -> Iterator[int]:
        return iter(range(self.p))

    def to_json(self, a):
        return a

    def from_json(self, obj):
        return int(obj) % self.p

    def sort_key(self, a):
        return (a,)

    def _base_names(self) -> dict[str, Any]:
        if self.p == 73:
            # fixed compatible roots: 10 + 10^7 = 18^2 (mod 73); delta is the
            # image of the generator of Q(delta) under zeta8 -> 10, 2^(1/4) -> 18
            return {"zeta8": 10, "fourth_root_2": 18, "delta": 50}
        return {}

    def __str__(self) -> str:
        return f"F_{self.p}"


# ---------------------------------------------------------------------------
# simple extensions
# ---------------------------------------------------------------------------


def _poly_trim(field: Field, a: list) -> list:
    while a and field.is_zero(a[-1]):
        a.pop()
    return a


def _poly_divmod(field: Field, a: list, b: list) -> tuple[list, list]:
    a = list(a)
    lead_inv = field.inv(b[-1])
    q = [field.zero] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = field.mul(a[k + len(b) - 1], lead_inv)
        q[k] = c
        if not field.is_zero(c):
            for i, bi in enumerate(b):
                a[k + i] = field.sub(a[k + i], field.mul(c, bi))
    return q, _poly_trim(field, a[: len(b) - 1])


def _poly_mul(field: Field, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def _poly_sub(field: Field, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [
        field.sub(a[i] if i < len(a) else field.zero, b[i] if i < len(b) else field.zero)
        for i in range(n)
    ]
    return _poly_trim(field, out)


def _poly_inverse_mod(field: Field, a: list, m: list) -> list:
    """Inverse of ``a`` modulo the monic ``m`` over ``field`` (extended Euclid)."""
    a = _poly_trim(field, list(a))
    if not a:
        raise DivisionByZero("inverse of 0")
    r0, r1 = list(m), a
    s0, s1 = [], [field.one]
    while len(r1) > 1:
        q, r = _poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(field, s0, _poly_mul(field, q, s1))
        if not r1:
            raise ZeroDivisorEncountered("element shares a factor with the minimal polynomial")
    c = field.inv(r1[0])
    out = [field.mul(c, x) for x in s1]
    _, rem = _poly_divmod(field, out, m) if len(out) >= len(m) else (None, out)
    return rem


@dataclass(frozen=True)
class ExtensionField(Field):
    """``base[x] / (minpoly)``; ``minpoly`` is a tuple of base raws, low degree first."""

    base: Field
    minpoly: tuple
    name: str
    kind = "extension"

    @property
    def n(self) -> int:
        return len(self.minpoly) - 1

    @property
    def degree(self) -> int:
        return self.n * self.base.degree

    @property
    def is_finite(self) -> bool:  # type: ignore[override]
        return self.base.is_finite

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def order(self) -> int:
        return self.base.order**self.n

    @cached_property
    def _tail(self) -> tuple:
        return tuple(self.base.neg(c) for c in self.minpoly[:-1])

    def from_int(self, n: int):
        b = self.base
        return (b.from_int(n),) + (b.zero,) * (self.n - 1)

    def from_fraction(self, q: Fraction):
        b = self.base
        return (b.from_fraction(q),) + (b.zero,) * (self.n - 1)

    def embed_base(self, c):
        return (c,) + (self.base.zero,) * (self.n - 1)

    def embed(self, value: "FieldElement"):
        if value.field == self.base:
            return self.embed_base(value.raw)
        return self.embed_base(self.base.embed(value))

    def generator(self):
        b = self.base
        return (b.zero, b.one) + (b.zero,) * (self.n - 2)

    def coeff_raws(self, a) -> tuple:
        return a

    def from_coeffs(self, coeffs) -> Any:
        coeffs = [self.base.coerce(c) if not _is_raw_of(self.base, c) else c for c in coeffs]
        coeffs = coeffs + [self.base.zero] * (self.n - len(coeffs))
        return self._reduce_list(coeffs)

    def _reduce_list(self, c: list):
        b = self.base
        n = self.n
        tail = self._tail
        for k in range(len(c) - 1, n - 1, -1):
            top = c[k]
            if not b.is_zero(top):
                for i in range(n):
                    c[k - n + i] = b.add(c[k - n + i], b.mul(top, tail[i]))
        return tuple(c[:n])

    def add(self, a, b):
        f = self.base
        return tuple(f.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        f = self.base
        return tuple(f.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        f = self.base
        return tuple(f.neg(x) for x in a)

    def mul(self, a, b):
        f = self.base
        n = self.n
        out = [f.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if f.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(x, y))
        return self._reduce_list(out)

    def scale(self, c, a):
        f = self.base
        return tuple(f.mul(c, x) for x in a)

    def inv(self, a):
        f = self.base
        if all(f.is_zero(x) for x in a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        inv = _poly_inverse_mod(f, list(a), list(self.minpoly))
        return tuple(inv) + (f.zero,) * (self.n - len(inv))

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def iter_raws(self) -> Iterator[tuple]:
        """All elements, coefficient vectors in lexicographic order (finite fields)."""
        import itertools

        base = list(self.base.iter_raws())
        for combo in itertools.product(base, repeat=self.n):
            yield tuple(combo)

    def to_json(self, a):
        return [self.base.to_json(x) for x in a]

    def from_json(self, obj):
        return tuple(self.base.from_json(x) for x in obj)

    def sort_key(self, a):
        return tuple(k for x in a for k in self.base.sort_key(x))

    def _base_names(self) -> dict[str, Any]:
        table = {k: self.embed_base(v) for k, v in self.base.names.items()}
        table[self.name] = self.generator()
        return table

    def __str__(self) -> str:
        return f"{self.base}[{self.name}]/({_fmt_poly(self.base, self.minpoly, 'x')})"


def _is_raw_of(field: Field, c) -> bool:
    if isinstance(field, RationalField):
        return isinstance(c, Fraction)
    if isinstance(field, PrimeField):
        return False  # ints are coerced (reduced) either way
    return isinstance(c, tuple)


@dataclass(frozen=True)
class NumberField(ExtensionField):
    """Extension of Q by a monic integral minimal polynomial (fast integer representation)."""

    @cached_property
    def _int_tail(self) -> tuple[int, ...]:
        return tuple(-int(c) for c in self.minpoly[:-1])

    @staticmethod
    def _norm(c: list, d: int):
        g = gcd(d, *c)
        if g != 1:
            c = [x // g for x in c]
            d //= g
        return (tuple(c), d)

    def _zero_raw(self):
        return ((0,) * self.n, 1)

    def from_int(self, n: int):
        return ((n,) + (0,) * (self.n - 1), 1)

    def from_fraction(self, q: Fraction):
        q = Fraction(q)
        return ((q.numerator,) + (0,) * (self.n - 1), q.denominator)

    def embed_base(self, c):
        return self.from_fraction(c)

    def embed(self, value: "FieldElement"):
        if isinstance(value.field, RationalField):
            return self.from_fraction(value.raw)
        raise OwnerMismatch(f"{value.field} does not embed into {self}")

    def generator(self):
        return ((0, 1) + (0,) * (self.n - 2), 1)

    def coeff_raws(self, a) -> tuple:
        c, d = a
        return tuple(Fraction(x, d) for x in c)

    def from_coeffs(self, coeffs):
        fr = [Fraction(x) if not isinstance(x, FieldElement) else x.raw for x in coeffs]
        d = 1
        for q in fr:
            d = d * q.denominator // gcd(d, q.denominator)
        ints = [int(q * d) for q in fr] + [0] * max(self.n - len(fr), 0)
        return self._reduce_ints(ints, d)

    def _reduce_ints(self, c: list, d: int):
        n = self.n
        tail = self._int_tail
        for k in range(len(c) - 1, n - 1, -1):
            top = c[k]
            if top:
                base = k - n
                for i, t in enumerate(tail):
                    if t:
                        c[base + i] += top * t
        return self._norm(c[:n], d)

    def add(self, a, b):
        (ac, ad), (bc, bd) = a, b
        if ad == bd:
            return self._norm([x + y for x, y in zip(ac, bc)], ad)
        g = gcd(ad, bd)
        fa, fb = bd // g, ad // g
        return self._norm([x * fa + y * fb for x, y in zip(ac, bc)], ad * fa)

    def sub(self, a, b):
        (ac, ad), (bc, bd) = a, b
        if ad == bd:
            return self._norm([x - y for x, y in zip(ac, bc)], ad)
        g = gcd(ad, bd)
        fa, fb = bd // g, ad // g
        return self._norm([x * fa - y * fb for x, y in zip(ac, bc)], ad * fa)

    def neg(self, a):
        c, d = a
        return (tuple(-x for x in c), d)

    def mul(self, a, b):
        (ac, ad), (bc, bd) = a, b
        n = self.n
        out = [0] * (2 * n - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        out[i + j] += x * y
        return self._reduce_ints(out, ad * bd)

    def scale(self, q, a):
        q = Fraction(q)
        c, d = a
        return self._norm([x * q.numerator for x in c], d * q.denominator)

    def inv(self, a):
        c, d = a
        if not any(c):
            raise DivisionByZero(f"inverse of 0 in {self}")
        Q = RationalField()
        inv = _poly_inverse_mod(Q, [Fraction(x, d) for x in c], list(self.minpoly))
        return self.from_coeffs(inv)

    def is_zero(self, a) -> bool:
        return not any(a[0])

    def to_json(self, a):
        c, d = a
        return {"num": list(c), "den": d}

    def from_json(self, obj):
        return self._norm(list(obj["num"]), int(obj["den"]))

    def sort_key(self, a):
        c, d = a
        return tuple(c) + (d,)

    def _base_names(self) -> dict[str, Any]:
        table = {self.name: self.generator()}
        mp = tuple(int(c) for c in self.minpoly)
        if mp == DELTA_MINPOLY:
            # 3 zeta8 = 2d^6 - 7d^4 + 11d^2 - 1,  3 * 2^(1/4) = d^7 - 5d^5 + 10d^3 - 8d
            third = Fraction(1, 3)
            table["delta"] = self.generator()
            table["zeta8"] = self.from_coeffs([-third, 0, 11 * third, 0, -7 * third, 0, 2 * third])
            table["fourth_root_2"] = self.from_coeffs(
                [0, -8 * third, 0, 10 * third, 0, -5 * third, 0, third]
            )
        elif mp == ZETA8_MINPOLY:
            table["zeta8"] = self.generator()
        return table

    def __str__(self) -> str:
        return f"Q({self.name})"


def _fmt_poly(base: Field, coeffs: Sequence, var: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = base.elem(coeffs[k])
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        terms.append(f"({c})*{mono}" if mono else f"({c})")
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class _Defer(Exception):
    """Operand of a foreign type: let Python try the reflected operation."""


def _binary(fn):
    def wrapper(self, other):
        try:
            return fn(self, other)
        except _Defer:
            return NotImplemented

    wrapper.__name__ = fn.__name__
    return wrapper


class FieldElement:
    """An element of a field handle; immutable value semantics."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if not isinstance(other, (FieldElement, int, Fraction)):
            raise _Defer
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other.raw
            return self.field.embed(other)
        return self.field.coerce(other)

    @_binary
    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    @_binary
    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.raw, self._other(other)))

    @_binary
    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.raw))

    @_binary
    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    @_binary
    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.raw, self._other(other)))

    @_binary
    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.raw, n))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.raw))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                return False
            return self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            return self.raw == self.field.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.raw)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    @property
    def coeffs(self) -> list:
        f = self.field
        if isinstance(f, ExtensionField):
            return [f.base.elem(c) for c in f.coeff_raws(self.raw)]
        return [self]

    def to_json(self):
        return self.field.to_json(self.raw)

    def __repr__(self) -> str:
        f = self.field
        if isinstance(f, NumberField):
            return _fmt_poly(RationalField(), f.coeff_raws(self.raw), f.name)
        if isinstance(f, ExtensionField):
            return _fmt_poly(f.base, self.raw, f.name)
        return str(self.raw)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

PRESETS: dict[str, dict] = {
    "Q": {"kind": "rationals"},
    "F3": {"kind": "prime", "p": 3},
    "F9": {"kind": "extension", "base": {"kind": "prime", "p": 3}, "minpoly": [1, 0, 1], "name": "i"},
    "F27": {
        "kind": "extension",
        "base": {"kind": "prime", "p": 3},
        "minpoly": [-1, -1, 0, 1],
        "name": "a",
    },
    "F73": {"kind": "prime", "p": 73},
    "Q_delta": {"kind": "extension", "base": {"kind": "rationals"}, "minpoly": list(DELTA_MINPOLY), "name": "delta"},
    "Q_zeta8": {"kind": "extension", "base": {"kind": "rationals"}, "minpoly": list(ZETA8_MINPOLY), "name": "zeta8"},
}


def make_field(spec) -> Field:
    """Build a field handle from a preset name or a tower description dict.

    >>> make_field("F73").named("zeta8")
    10
    """
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        if spec in PRESETS:
            return make_field(PRESETS[spec])
        if spec in CENSUS_STEPS:
            return census_field(spec)
        raise KeyError(f"unknown field preset {spec!r}")
    kind = spec["kind"]
    if kind == "rationals":
        return RationalField()
    if kind == "prime":
        p = int(spec["p"])
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        return PrimeField(p)
    if kind == "extension":
        base = make_field(spec["base"])
        return extension(base, spec["minpoly"], spec.get("name", "x"))
    raise ValueError(f"unknown field kind {kind!r}")


def extension(base: Field, minpoly: Sequence, name: str) -> ExtensionField:
    """Simple extension ``base[name]/(minpoly)``; irreducibility is trusted, not checked."""
    coeffs = [base.coerce(c) if not isinstance(c, FieldElement) else c.raw for c in minpoly]
    if len(coeffs) < 3:
        raise ValueError("minimal polynomial must have degree >= 2")
    if coeffs[-1] != base.one:
        raise NonMonicMinpoly(f"leading coefficient of minpoly must be 1, got {base.elem(coeffs[-1])}")
    if isinstance(base, RationalField) and all(c.denominator == 1 for c in coeffs):
        return NumberField(base, tuple(coeffs), name)
    return ExtensionField(base, tuple(coeffs), name)


# Quadratic steps over Q(zeta8) used for the quadratic-point census.
CENSUS_STEPS = {
    "Q_fourthroot2_zeta8": "fourth_root_2",  # w^2 = sqrt2
    "Q_zeta3_zeta8": "zeta3",  # w^2 + w + 1
    "Q_sqrtm7_zeta8": "alpha",  # w^2 - w + 2, w = (1 + sqrt(-7))/2
}


def census_field(label: str) -> ExtensionField:
    k0 = make_field("Q_zeta8")
    if label == "Q_fourthroot2_zeta8":
        minpoly = [k0.neg(k0.names["sqrt2"]), k0.zero, k0.one]
    elif label == "Q_zeta3_zeta8":
        minpoly = [k0.one, k0.one, k0.one]
    elif label == "Q_sqrtm7_zeta8":
        minpoly = [k0.from_int(2), k0.from_int(-1), k0.one]
    else:
        raise KeyError(label)
    return ExtensionField(k0, tuple(minpoly), CENSUS_STEPS[label])


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------


class FieldHom:
    """Ring homomorphism out of a simple extension, fixed by the image of its generator.

    The base field maps by its canonical map (identity for automorphisms,
    reduction for ``Q -> F_p``).  When ``target`` equals ``source`` this is a
    field automorphism over the base.
    """

    def __init__(self, source: ExtensionField, target: Field, generator_image, label: str = ""):
        if not isinstance(source, ExtensionField):
            raise TypeError("homomorphisms are defined out of simple extensions")
        self.source = source
        self.target = target
        self.generator_image = generator_image  # raw in target
        self.label = label
        powers = [target.one]
        for _ in range(source.n - 1):
            powers.append(target.mul(powers[-1], generator_image))
        self._powers = powers

    def _base_map(self, c):
        src, tgt = self.source, self.target
        if isinstance(src.base, RationalField):
            return tgt.from_fraction(c)
        if tgt == src:
            return src.embed_base(c)
        if isinstance(tgt, ExtensionField) and tgt.base == src.base:
            return tgt.embed_base(c)
        raise OwnerMismatch(f"no base map from {src.base} to {tgt}")

    def apply_raw(self, a):
        tgt = self.target
        acc = tgt.zero
        for c, pw in zip(self.source.coeff_raws(a), self._powers):
            if c == 0 if isinstance(c, Fraction) else self.source.base.is_zero(c):
                continue
            acc = tgt.add(acc, tgt.mul(self._base_map(c), pw))
        return acc

    def __call__(self, a):
        if isinstance(a, FieldElement):
            if a.field != self.source:
                raise OwnerMismatch(f"{a.field} is not the source {self.source}")
            return self.target.elem(self.apply_raw(a.raw))
        return self.target.elem(self.apply_raw(self.source.coerce(a)))

    def compose(self, inner: "FieldHom") -> "FieldHom":
        """``self o inner`` (apply ``inner`` first)."""
        if inner.target != self.source:
            raise OwnerMismatch("cannot compose: target/source mismatch")
        image = self.apply_raw(inner.generator_image)
        return type(self)(inner.source, self.target, image, f"{self.label}{inner.label}")

    def __mul__(self, inner: "FieldHom") -> "FieldHom":
        return self.compose(inner)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldHom)
            and other.source == self.source
            and other.target == self.target
            and other.generator_image == self.generator_image
        )

    def __hash__(self) -> int:
        return hash(self.generator_image)

    def __repr__(self) -> str:
        img = self.target.elem(self.generator_image)
        return f"<{self.label or 'hom'}: {self.source.name} -> {img}>"


class FieldAutomorphism(FieldHom):
    def __init__(self, source: ExtensionField, target: Field, generator_image, label: str = ""):
        super().__init__(source, target, generator_image, label)


def apply(aut: FieldHom, a: FieldElement) -> FieldElement:
    return aut(a)


def identity_automorphism(field: ExtensionField) -> FieldAutomorphism:
    return FieldAutomorphism(field, field, field.generator(), "id")


def make_automorphism(
    field: ExtensionField,
    generator_image: FieldElement,
    expected_actions: Sequence[tuple[str, FieldElement]] = (),
    label: str = "",
) -> FieldHom:
    """Build and verify the map ``field -> generator_image.field`` sending the generator to ``generator_image``.

    If ``generator_image`` lives in ``field`` the result is an automorphism;
    otherwise it is a homomorphism into that field (e.g. reduction into F_73
    twisted by a Galois element).  Raises ``NotARoot`` / ``ActionMismatch``.
    """
    target = generator_image.field
    g = generator_image.raw
    mp_image = target.zero
    for k in range(len(field.minpoly) - 1, -1, -1):
        c = field.minpoly[k]
        cmapped = FieldHom(field, target, g)._base_map(c)
        mp_image = target.add(target.mul(mp_image, g), cmapped)
    if not target.is_zero(mp_image):
        raise NotARoot(f"{generator_image} is not a root of the minimal polynomial of {field}")
    cls = FieldAutomorphism if target == field else FieldHom
    hom = cls(field, target, g, label)
    for name, expected in expected_actions:
        got = hom(field.named(name))
        if got != expected:
            raise ActionMismatch(f"{label or 'map'}({name}) = {got}, expected {expected}")
    return hom


def roots_in_finite_field(field: ExtensionField, target: Field) -> list:
    """All raws ``r`` of the finite ``target`` with ``minpoly(r) = 0`` (exhaustive scan)."""
    hom0 = FieldHom(field, target, target.zero)
    mp = [hom0._base_map(c) for c in field.minpoly]
    return [r for r in target.iter_raws() if target.is_zero(target.eval_poly(mp, r))]


def qdelta_automorphism(
    field: NumberField, zeta8_image: FieldElement, fourth_root_2_image: FieldElement, label: str
) -> FieldAutomorphism:
    """Automorphism of Q(delta) prescribed by its action on zeta8 and 2^(1/4).

    Uses delta^2 = (2 - sqrt2)(1 + zeta4)/2 and delta = 3 * 2^(1/4) / q(delta^2)
    with q(y) = y^3 - 5y^2 + 10y - 8; both identities are re-checked here.
    """
    d = field.named("delta")
    z8 = field.named("zeta8")
    r = field.named("fourth_root_2")
    sqrt2 = z8 + z8**7
    z4 = z8 * z8

    def q(y):
        return y**3 - 5 * y**2 + 10 * y - 8

    d2 = (2 - sqrt2) * (1 + z4) / 2
    assert d * d == d2 and d == 3 * r / q(d2), "delta identities failed"
    z8i = zeta8_image
    d2_image = (2 - (z8i + z8i**7)) * (1 + z8i * z8i) / 2
    image = 3 * fourth_root_2_image / q(d2_image)
    return make_automorphism(
        field,
        image,
        [("zeta8", zeta8_image), ("fourth_root_2", fourth_root_2_image)],
        label,
    )


def galois_generators(field: NumberField) -> tuple[FieldAutomorphism, FieldAutomorphism]:
    """(sigma, tau): sigma(zeta8) = -zeta8, sigma(2^(1/4)) = 2^(1/4) zeta4; tau(zeta8) = zeta8^7, tau fixes 2^(1/4)."""
    z8 = field.named("zeta8")
    r = field.named("fourth_root_2")
    sigma = qdelta_automorphism(field, -z8, r * z8 * z8, "sigma")
    tau = qdelta_automorphism(field, z8**7, r, "tau")
    return sigma, tau


def reduction_map(source: NumberField, target: PrimeField) -> FieldHom:
    """Reduction Q(delta) -> F_p sending delta to the registered ``delta`` of the target."""
    return make_automorphism(
        source,
        target.named("delta"),
        [(n, target.named(n)) for n in ("zeta8", "fourth_root_2") if target.has(n)],
        "red",
    )


def field_fingerprint(field: Field) -> str:
    import hashlib

    return hashlib.sha256(repr(field).encode()).hexdigest()[:16]


Hom = Callable[[Any], Any]
