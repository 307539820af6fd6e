"""Exact linear algebra over the rationals.

Thin layer over :class:`flint.fmpq_mat`: kernels, column spaces, left
solves and polynomial evaluation. Everything here is exact; there is no
pivoting tolerance anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly

__all__ = [
    "Mat",
    "matrix",
    "zeros",
    "identity",
    "to_fraction",
    "rank",
    "rref",
    "nullspace",
    "column_space",
    "solve_left",
    "hstack",
    "vstack",
    "block_diag",
    "is_zero",
    "poly_eval",
    "to_rows",
]

Mat = fmpq_mat


def _q(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return _q(Fraction(x))
    return fmpq(x)


def to_fraction(x) -> Fraction:
    x = _q(x)
    return Fraction(int(x.p), int(x.q))


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Mat:
    """Build a rational matrix from nested rows (ints, Fractions, strings)."""
    rows = [list(r) for r in rows]
    nr = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix rows")
        flat.extend(_q(x) for x in r)
    return fmpq_mat(nr, ncols, flat)


def zeros(nr: int, nc: int) -> Mat:
    return fmpq_mat(nr, nc)


def identity(n: int) -> Mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def to_rows(a: Mat) -> list[list[Fraction]]:
    return [[to_fraction(a[i, j]) for j in range(a.ncols())] for i in range(a.nrows())]


def is_zero(a: Mat) -> bool:
    return all(a[i, j] == 0 for i in range(a.nrows()) for j in range(a.ncols()))


def rank(a: Mat) -> int:
    if a.nrows() == 0 or a.ncols() == 0:
        return 0
    return a.rref()[1]


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if a.nrows() == 0 or a.ncols() == 0:
        return a, []
    r, rk = a.rref()
    pivots = []
    col = 0
    for i in range(rk):
        while r[i, col] == 0:
            col += 1
        pivots.append(col)
        col += 1
    return r, pivots


def nullspace(a: Mat) -> Mat:
    """Columns form a basis of ``{x : a x = 0}``."""
    n = a.ncols()
    r, pivots = rref(a)
    free = [j for j in range(n) if j not in set(pivots)]
    out = fmpq_mat(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, p in enumerate(pivots):
            out[p, k] = -r[i, f]
    return out


def column_space(a: Mat) -> Mat:
    """A basis of the column span, taken from the pivot columns of ``a``."""
    _, pivots = rref(a)
    out = fmpq_mat(a.nrows(), len(pivots))
    for k, p in enumerate(pivots):
        for i in range(a.nrows()):
            out[i, k] = a[i, p]
    return out


def solve_left(b: Mat, y: Mat) -> Mat:
    """Solve ``b x = y`` exactly; ``b`` must have full column rank.

    Raises ValueError when ``y`` is not in the column span of ``b``.
    """
    m, k = b.nrows(), b.ncols()
    if y.nrows() != m:
        raise ValueError("shape mismatch in solve_left")
    if k == 0:
        if not is_zero(y):
            raise ValueError("system is inconsistent")
        return fmpq_mat(0, y.ncols())
    aug = hstack([b, y])
    r, pivots = rref(aug)
    if len(pivots) and pivots[-1] >= k:
        raise ValueError("system is inconsistent")
    if len(pivots) != k:
        raise ValueError("left factor does not have full column rank")
    x = fmpq_mat(k, y.ncols())
    for i in range(k):
        for j in range(y.ncols()):
            x[i, j] = r[i, k + j]
    return x


def hstack(blocks: Iterable[Mat]) -> Mat:
    blocks = list(blocks)
    nr = blocks[0].nrows()
    nc = sum(b.ncols() for b in blocks)
    out = fmpq_mat(nr, nc)
    c0 = 0
    for b in blocks:
        if b.nrows() != nr:
            raise ValueError("hstack row mismatch")
        for i in range(nr):
            for j in range(b.ncols()):
                out[i, c0 + j] = b[i, j]
        c0 += b.ncols()
    return out


def vstack(blocks: Iterable[Mat]) -> Mat:
    blocks = list(blocks)
    return hstack([b.transpose() for b in blocks]).transpose()


def block_diag(blocks: Iterable[Mat]) -> Mat:
    blocks = list(blocks)
    nr = sum(b.nrows() for b in blocks)
    nc = sum(b.ncols() for b in blocks)
    out = fmpq_mat(nr, nc)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows()):
            for j in range(b.ncols()):
                out[r0 + i, c0 + j] = b[i, j]
        r0 += b.nrows()
        c0 += b.ncols()
    return out


def poly_eval(p: fmpq_poly, a: Mat) -> Mat:
    """Evaluate a rational polynomial at a square matrix (Horner)."""
    n = a.nrows()
    coeffs = p.coeffs()
    acc = fmpq_mat(n, n)
    eye = identity(n)
    for c in reversed(coeffs):
        acc = acc * a + eye * c
    return acc
