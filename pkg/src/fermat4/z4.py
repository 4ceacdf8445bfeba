"""Linear algebra over Z/4: Howell forms, kernels, fixed submodules, finite matrix groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ClosureCapExceeded, DimensionMismatch, NoSolution, NonInvertibleGenerator, NotSimilitude

Row = tuple[int, ...]


class Z4Matrix:
    """Dense matrix over Z/4 acting on column vectors."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        ent = tuple(tuple(int(x) % 4 for x in r) for r in entries)
        if cols is None:
            if not ent:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            cols = len(ent[0])
        if any(len(r) != cols for r in ent):
            raise DimensionMismatch("ragged rows")
        self.rows = len(ent)
        self.cols = cols
        self.entries = ent

    @classmethod
    def identity(cls, n: int) -> "Z4Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Z4Matrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Z4Matrix":
        n = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(n)])

    def column(self, j: int) -> Row:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "Z4Matrix":
        return Z4Matrix([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "Z4Matrix") -> "Z4Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        oc = [other.column(j) for j in range(other.cols)]
        return Z4Matrix([[sum(a * b for a, b in zip(r, c)) for c in oc] for r in self.entries], other.cols)

    def apply(self, v: Sequence[int]) -> Row:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(sum(a * b for a, b in zip(r, v)) % 4 for r in self.entries)

    def __add__(self, other: "Z4Matrix") -> "Z4Matrix":
        self._same_shape(other)
        return Z4Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "Z4Matrix") -> "Z4Matrix":
        self._same_shape(other)
        return Z4Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __rmul__(self, c: int) -> "Z4Matrix":
        return Z4Matrix([[c * a for a in r] for r in self.entries], self.cols)

    def __pow__(self, n: int) -> "Z4Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        out, base = Z4Matrix.identity(self.rows), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def _same_shape(self, other: "Z4Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")

    def vstack(self, other: "Z4Matrix") -> "Z4Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Z4Matrix(self.entries + other.entries, self.cols)

    def det_mod2(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        m = [[x & 1 for x in r] for r in self.entries]
        n = self.rows
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            for i in range(c + 1, n):
                if m[i][c]:
                    m[i] = [a ^ b for a, b in zip(m[i], m[c])]
        return 1

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det_mod2() == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Z4Matrix) and self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __repr__(self) -> str:
        return "Z4Matrix(" + " / ".join(" ".join(map(str, r)) for r in self.entries) + ")"


# ---------------------------------------------------------------------------
# Howell form
# ---------------------------------------------------------------------------


def _sub(a: list[int], b: Sequence[int], k: int) -> list[int]:
    return [(x - k * y) % 4 for x, y in zip(a, b)]


def _howell_rows(rows: Iterable[Sequence[int]], ncols: int) -> list[Row]:
    pool = [list(r) for r in rows if any(x % 4 for x in r)]
    pool = [[x % 4 for x in r] for r in pool]
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        idx = next((i for i, r in enumerate(pool) if r[c] % 2), None)
        if idx is None:
            idx = next((i for i, r in enumerate(pool) if r[c]), None)
        if idx is None:
            continue
        p = pool.pop(idx)
        if p[c] == 3:
            p = [(3 * x) % 4 for x in p]
        v = p[c]
        rest = []
        for r in pool:
            if r[c]:
                r = _sub(r, p, r[c] // v)
            if any(r):
                rest.append(r)
        if v == 2:
            # the annihilator multiple keeps the row span closed (Howell property)
            twice = [(2 * x) % 4 for x in p]
            if any(twice):
                rest.append(twice)
        pool = rest
        out.append(p)
        pivots.append(c)
    for i, c in enumerate(pivots):
        v = out[i][c]
        for j in range(i):
            k = out[j][c] // v
            if k:
                out[j] = _sub(out[j], out[i], k)
    return [tuple(r) for r in out]


def howell_form(M: Z4Matrix) -> Z4Matrix:
    """Canonical generators of the row span: equal spans iff equal forms."""
    return Z4Matrix(_howell_rows(M.entries, M.cols), M.cols)


def span_order(M: Z4Matrix) -> int:
    H = howell_form(M)
    order = 1
    for r in H.entries:
        lead = next(x for x in r if x)
        order *= 4 // lead
    return order


def reduce_vector(H: Z4Matrix, v: Sequence[int], upto: int | None = None) -> list[int]:
    """Reduce v by Howell rows whose pivot lies in the first ``upto`` columns."""
    w = [x % 4 for x in v]
    upto = H.cols if upto is None else upto
    for r in H.entries:
        c = next(i for i, x in enumerate(r) if x)
        if c >= upto:
            break
        if w[c] % r[c] == 0 and w[c]:
            w = _sub(w, r, w[c] // r[c])
    return w


def in_span(M: Z4Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_vector(howell_form(M), v))


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleStructure:
    """Submodule of (Z/4)^n with Howell-form generators and type (a, b): (Z/4)^a + (Z/2)^b."""

    generators: tuple[Row, ...]
    elementary_type: tuple[int, int]
    ambient: int

    @property
    def order(self) -> int:
        a, b = self.elementary_type
        return 4**a * 2**b

    def matrix(self) -> Z4Matrix:
        return Z4Matrix(self.generators, self.ambient)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.generators:
            return not any(x % 4 for x in v)
        return not any(reduce_vector(self.matrix(), v))

    def same_span(self, vectors: Iterable[Sequence[int]]) -> bool:
        return self.generators == submodule(vectors, self.ambient).generators

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators], "type": list(self.elementary_type)}


def submodule(vectors: Iterable[Sequence[int]], n: int) -> ModuleStructure:
    vecs = [tuple(v) for v in vectors]
    H = _howell_rows(vecs, n)
    log_order = sum(2 if next(x for x in r if x) == 1 else 1 for r in H)
    doubled = _howell_rows([[2 * x for x in r] for r in H], n)
    a = len(doubled)  # 2S is (Z/2)^a
    return ModuleStructure(tuple(H), (a, log_order - 2 * a), n)


def kernel(M: Z4Matrix) -> ModuleStructure:
    """{x : M x = 0}, from the Howell form of [M^T | I]."""
    m, n = M.rows, M.cols
    aug = [list(M.column(j)) + [int(i == j) for i in range(n)] for j in range(n)]
    H = _howell_rows(aug, m + n)
    gens = [r[m:] for r in H if not any(r[:m])]
    return submodule(gens, n)


def solve(M: Z4Matrix, b: Sequence[int]) -> Row:
    """Some x with M x = b."""
    m, n = M.rows, M.cols
    if len(b) != m:
        raise DimensionMismatch("right-hand side length")
    aug = Z4Matrix([list(M.column(j)) + [int(i == j) for i in range(n)] for j in range(n)], m + n)
    w = reduce_vector(howell_form(aug), list(b) + [0] * n, upto=m)
    if any(w[:m]):
        raise NoSolution(f"no solution for right-hand side {tuple(b)}")
    return tuple((-x) % 4 for x in w[m:])


def fixed_submodule(mats: Sequence[Z4Matrix]) -> ModuleStructure:
    if not mats:
        raise DimensionMismatch("need at least one matrix")
    n = mats[0].rows
    if any(A.rows != n or A.cols != n for A in mats):
        raise DimensionMismatch("fixed_submodule needs square matrices of equal size")
    I = Z4Matrix.identity(n)
    stacked = mats[0] - I
    for A in mats[1:]:
        stacked = stacked.vstack(A - I)
    return kernel(stacked)


# ---------------------------------------------------------------------------
# finite matrix groups
# ---------------------------------------------------------------------------


@dataclass
class GroupClosure:
    order: int
    elements: list[Z4Matrix]
    abelian: bool
    cyclic: bool
    dihedral8: bool

    def classification(self) -> str:
        if self.cyclic:
            return f"cyclic of order {self.order}"
        if self.dihedral8:
            return "dihedral of order 8"
        return ("abelian" if self.abelian else "nonabelian") + f" of order {self.order}"

    def to_json(self) -> dict:
        return {"order": self.order, "classification": self.classification()}


def element_order(g: Z4Matrix, cap: int = 10000) -> int:
    I = Z4Matrix.identity(g.rows)
    x, k = g, 1
    while x != I:
        x = x @ g
        k += 1
        if k > cap:
            raise ClosureCapExceeded("element order above cap")
    return k


def group_closure(gens: Sequence[Z4Matrix], cap: int = 10000) -> GroupClosure:
    if not gens:
        raise DimensionMismatch("need at least one generator")
    for g in gens:
        if not g.is_invertible():
            raise NonInvertibleGenerator(repr(g))
    I = Z4Matrix.identity(gens[0].rows)
    seen = {I}
    order = [I]
    queue = deque([I])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(seen) > cap:
                    raise ClosureCapExceeded(f"closure exceeds {cap} elements")
    n = len(order)
    abelian = all(a @ b == b @ a for a in gens for b in gens)
    orders = {g: element_order(g) for g in order}
    cyclic = n in orders.values()
    dihedral = False
    if n == 8 and not abelian:
        r4 = [r for r, k in orders.items() if k == 4]
        s2 = [s for s, k in orders.items() if k == 2]
        dihedral = any(s @ r @ s == r @ r @ r and s not in (r, r @ r, r @ r @ r) for r in r4 for s in s2)
    return GroupClosure(n, order, abelian, cyclic, dihedral)


def gsp_check(g: Z4Matrix, J: Z4Matrix) -> int:
    """The unit c with g^T J g = c J."""
    if g.rows != g.cols or J.rows != J.cols or g.rows != J.rows:
        raise DimensionMismatch("gsp_check needs square matrices of equal size")
    lhs = g.T @ J @ g
    for c in (1, 3):
        if lhs == c * J:
            return c
    raise NotSimilitude(f"g^T J g = {lhs} is not a unit multiple of J")
