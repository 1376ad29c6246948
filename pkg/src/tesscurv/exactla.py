"""Exact linear algebra over the rationals for small integer matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

__all__ = ["PRIME", "rank_mod_p", "rank_exact", "nullspace_exact", "integer_vector"]

PRIME = (1 << 61) - 1


def rank_mod_p(A, p: int = PRIME) -> int:
    """Rank of an integer matrix over ``GF(p)``.

    This never exceeds the rank over the rationals, so a full modular rank
    certifies full rational rank.
    """
    M = [[int(x) % p for x in row] for row in np.asarray(A, dtype=object).tolist()]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        prow = [(x * inv) % p for x in M[rank]]
        M[rank] = prow
        for i in range(rows):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], prow)]
        rank += 1
        if rank == rows:
            break
    return rank


def _rref(A):
    """Reduced row echelon form with Fraction entries; returns (R, pivots)."""
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank_exact(A) -> int:
    """Rank over the rationals.

    A full modular rank is accepted directly; otherwise Gaussian
    elimination in Fractions decides.
    """
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    if A.ndim == 1:
        A = A.reshape(1, -1)
    r = rank_mod_p(A)
    if r == min(A.shape):
        return r
    return len(_rref(A.tolist())[1])


def nullspace_exact(A, ncols: int | None = None) -> list:
    """Basis of the rational null space as lists of Fractions."""
    rows = [list(row) for row in np.asarray(A, dtype=object).tolist()] if len(A) else []
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def integer_vector(v) -> list:
    """Scale a rational vector to coprime integers with a positive first
    nonzero entry."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
