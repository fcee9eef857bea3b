"""Exact rational linear algebra on small dense symmetric matrices.

Everything here works over :class:`fractions.Fraction`; there is no
floating-point path.  Matrices are tuples of tuples, vectors are tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


class SingularMatrix(ArithmeticError):
    """Raised when elimination runs out of nonzero pivots."""


class NotSymmetric(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: a float in an exact pipeline is always a bug.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("refusing to coerce bool to Fraction")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def sym_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Build a symmetric Fraction matrix, checking shape and symmetry."""
    mat = tuple(vector(r) for r in rows)
    n = len(mat)
    for i, row in enumerate(mat):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j] != mat[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) = {mat[i][j]} but ({j},{i}) = {mat[j][i]}")
    return mat


def matvec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in M)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def bilinear(M: Sequence[Sequence[Fraction]], u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """u^T M v."""
    return dot(u, matvec(M, v))


def submatrix(M: Sequence[Sequence[Fraction]], idx: Sequence[int]) -> Matrix:
    return tuple(tuple(M[i][j] for j in idx) for i in idx)


def solve(M: Sequence[Sequence], v: Sequence) -> Vector:
    """Solve ``M x = v`` exactly by Gaussian elimination with full pivoting.

    Raises SingularMatrix if no nonzero pivot is left before the last column.
    """
    if len(v) != len(M):
        raise ValueError(f"dimension mismatch: {len(M)}x{len(M)} matrix, vector of length {len(v)}")
    return solve_many(M, [v])[0]


def solve_many(M: Sequence[Sequence], rhs: Sequence[Sequence]) -> tuple[Vector, ...]:
    """Solve ``M x = b`` for every b in ``rhs`` with a single elimination."""
    n = len(M)
    k_rhs = len(rhs)
    if any(len(b) != n for b in rhs):
        raise ValueError(f"dimension mismatch: {n}x{n} matrix and right-hand sides {[len(b) for b in rhs]}")
    if n == 0:
        return tuple(() for _ in rhs)
    a = [list(vector(row)) for row in M]
    b = [list(vector(col)) for col in zip(*rhs)] if k_rhs else [[] for _ in range(n)]
    cols = list(range(n))  # cols[k] = original column sitting at position k

    for k in range(n):
        piv_r, piv_c, best = -1, -1, Fraction(0)
        for r in range(k, n):
            row = a[r]
            for c in range(k, n):
                x = row[c]
                if x and abs(x) > best:
                    piv_r, piv_c, best = r, c, abs(x)
        if best == 0:
            raise SingularMatrix(f"zero pivot at step {k} of {n}")
        if piv_r != k:
            a[k], a[piv_r] = a[piv_r], a[k]
            b[k], b[piv_r] = b[piv_r], b[k]
        if piv_c != k:
            for row in a:
                row[k], row[piv_c] = row[piv_c], row[k]
            cols[k], cols[piv_c] = cols[piv_c], cols[k]
        prow, p = a[k], a[k][k]
        nz = [c for c in range(k + 1, n) if prow[c]]
        for r in range(k + 1, n):
            f = a[r][k]
            if not f:
                continue
            f /= p
            row = a[r]
            row[k] = Fraction(0)
            for c in nz:
                row[c] -= f * prow[c]
            b[r] = [x - f * y for x, y in zip(b[r], b[k])]

    y = [[Fraction(0)] * k_rhs for _ in range(n)]
    for k in range(n - 1, -1, -1):
        acc = list(b[k])
        row = a[k]
        for c in range(k + 1, n):
            if row[c]:
                acc = [s - row[c] * t for s, t in zip(acc, y[c])]
        y[k] = [s / row[k] for s in acc]
    x = [None] * n
    for k in range(n):
        x[cols[k]] = y[k]
    return tuple(tuple(x[i][j] for i in range(n)) for j in range(k_rhs))


def ldl_pivots(M: Sequence[Sequence]) -> Vector:
    """Diagonal of the exact LDL^T factorization without pivoting.

    The k-th pivot equals the ratio of consecutive leading principal minors.
    Stops early (returning a shorter tuple ending in 0) at the first zero
    pivot, since the factorization does not exist past that point.
    """
    n = len(M)
    a = [list(vector(row)) for row in M]
    pivots: list[Fraction] = []
    for k in range(n):
        p = a[k][k]
        pivots.append(p)
        if p == 0:
            break
        for r in range(k + 1, n):
            f = a[r][k] / p
            if f == 0:
                continue
            for c in range(k + 1, n):
                a[r][c] -= f * a[k][c]
    return tuple(pivots)


def leading_minors(M: Sequence[Sequence]) -> Vector:
    """Leading principal minors det(M[:k,:k]) for k = 1..n."""
    mat = tuple(vector(r) for r in M)
    return tuple(_det(submatrix(mat, range(k))) for k in range(1, len(mat) + 1))


def _det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(M)
    a = [list(row) for row in M]
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return det


def is_negative_definite(M: Sequence[Sequence]) -> bool:
    """True iff every LDL^T pivot is strictly negative.

    Equivalent to the leading principal minors alternating in sign starting
    negative.  The empty matrix counts as negative definite (vacuously).
    """
    n = len(M)
    pivots = ldl_pivots(M)
    return len(pivots) == n and all(p < 0 for p in pivots)
