"""Rank and null space over a field handle (numpy fast path for prime fields)."""

from __future__ import annotations

import numpy as np

from .fields import Field, PrimeField


def _rref_prime(p: int, rows: list[list[int]], ncols: int):
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64), []
    A = np.array(rows, dtype=np.int64) % p
    nrows = A.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_generic(F: Field, rows: list[list], ncols: int, full: bool = True):
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(A)
    is_zero, mul, sub, inv = F.is_zero, F.mul, F.sub, F.inv
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if not is_zero(A[i][c])), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        piv = inv(A[r][c])
        row = [x if is_zero(x) else mul(x, piv) for x in A[r]]
        A[r] = row
        nzcols = [j for j in range(c, ncols) if not is_zero(row[j])]
        for i in range(0 if full else r + 1, nrows):
            if i == r:
                continue
            f = A[i][c]
            if is_zero(f):
                continue
            Ai = A[i]
            for j in nzcols:
                Ai[j] = sub(Ai[j], mul(f, row[j]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(F: Field, rows: list[list], ncols: int):
    """Reduced row echelon form (nonzero rows) and pivot columns."""
    if isinstance(F, PrimeField):
        A, piv = _rref_prime(F.p, rows, ncols)
        return [list(map(int, r)) for r in A], piv
    return _rref_generic(F, rows, ncols)


def rank(F: Field, rows: list[list], ncols: int) -> int:
    if isinstance(F, PrimeField):
        return len(_rref_prime(F.p, rows, ncols)[1])
    return len(_rref_generic(F, rows, ncols, full=False)[1])


def nullspace(F: Field, rows: list[list], ncols: int) -> list[list]:
    """Basis of ``{x : A x = 0}``, one vector per free column (in column order)."""
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [F.zero] * ncols
        v[fcol] = F.one
        for row, pc in zip(R, pivots):
            if not F.is_zero(row[fcol]):
                v[pc] = F.neg(row[fcol])
        basis.append(v)
    return basis
