"""Exact Gaussian elimination over Z_p and over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _rref(rows, ncols, p):
    """Row-reduce a copy of ``rows``; returns (matrix, pivot columns)."""
    if p is None:
        A = [[Fraction(v) for v in row] for row in rows]
    else:
        A = [[int(v) % p for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p) if p is not None else 1 / A[r][c]
        A[r] = [v * inv % p if p is not None else v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                if p is None:
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                else:
                    A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows, ncols: int, p: int | None = None) -> int:
    """Rank over Z_p, or over Q when ``p`` is None."""
    return len(_rref(rows, ncols, p)[1])


def null_vector(rows, ncols: int, p: int | None = None):
    """A nonzero kernel vector, or None when the columns are independent.

    Over Q the vector is scaled to coprime integers.
    """
    A, pivots = _rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    vec = [0] * ncols
    vec[f] = 1
    for r, c in enumerate(pivots):
        vec[c] = (-A[r][f]) % p if p is not None else -A[r][f]
    if p is None:
        vec = [Fraction(v) for v in vec]
        scale = lcm(*(v.denominator for v in vec))
        vec = [int(v * scale) for v in vec]
    return vec
