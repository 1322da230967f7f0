"""Brute-force oracle: search every invertible basis matrix over a small F_p.

Independent of the library: plain numpy integer arithmetic mod p.
"""

import itertools
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def invertible_matrices(p: int, n: int) -> np.ndarray:
    """All of GL_n(F_p) as an array of shape (count, n, n)."""
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    rows = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    out = []
    for combo in itertools.product(range(len(rows)), repeat=n):
        M = rows[list(combo)]
        if _det_mod(M, p) != 0:
            out.append(M)
    return np.array(out, dtype=np.int64)


def _det_mod(M, p):
    A = [list(map(int, r)) for r in M]
    n, det = len(A), 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            f = A[r][c] * inv % p
            A[r] = [(a - f * b) % p for a, b in zip(A[r], A[c])]
    return det % p


@lru_cache(maxsize=None)
def _offdiag_map(p: int, n: int) -> np.ndarray:
    """Coefficients of the off-diagonal entries of P M P^T in M's upper triangle.

    Shape (|GL_n|, n(n-1)/2, n(n+1)/2); entry (a, (i,l), (j,k)) is the
    coefficient of M[j][k] in (P_a M P_a^T)[i][l].
    """
    Ps = invertible_matrices(p, n)
    slots = [(j, k) for j in range(n) for k in range(j, n)]
    offs = [(i, l) for i in range(n) for l in range(i + 1, n)]
    out = np.zeros((len(Ps), len(offs), len(slots)), dtype=np.int64)
    for s, (j, k) in enumerate(slots):
        for o, (i, l) in enumerate(offs):
            c = Ps[:, i, j] * Ps[:, l, k]
            if j != k:
                c = c + Ps[:, i, k] * Ps[:, l, j]
            out[:, o, s] = c % p
    return out


def diagonalizing_mask(p: int, M) -> np.ndarray:
    """Boolean mask over ``invertible_matrices(p, n)``: which P make P M P^T diagonal."""
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    if n < 2:
        return np.ones(len(invertible_matrices(p, n)), dtype=bool)
    m = np.array([M[j, k] for j in range(n) for k in range(j, n)], dtype=np.int64)
    return ~((_offdiag_map(p, n) @ m) % p).any(axis=1)


def brute_force_orthogonalizable(p: int, mats, n: int) -> bool:
    mask = np.ones(len(invertible_matrices(p, n)), dtype=bool)
    for M in mats:
        mask &= diagonalizing_mask(p, M)
    return bool(mask.any())


def symmetric_matrices(p: int, n: int):
    """Every symmetric n x n matrix over F_p, as nested lists."""
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(p), repeat=len(slots)):
        M = [[0] * n for _ in range(n)]
        for (i, j), v in zip(slots, vals):
            M[i][j] = M[j][i] = v
        yield M
