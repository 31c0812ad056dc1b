"""Dense exact linear algebra over Q and F_p.

Matrices are numpy arrays: ``int64`` with entries in ``[0, p)`` over F_p and
``object`` arrays of ``gmpy2.mpq`` over Q.  Row reduction over F_p uses the
compiled kernel in :mod:`.kernels`.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

from ..rings import Field
from .kernels import numba_enabled, rref_modp

__all__ = [
    "asarray", "zeros", "identity", "rref", "rank", "nullspace", "left_kernel",
    "solve_left", "matmul", "numba_enabled", "rref_modp",
]


def zeros(m: int, n: int, field: Field) -> np.ndarray:
    if field.p:
        return np.zeros((m, n), dtype=np.int64)
    A = np.empty((m, n), dtype=object)
    A.fill(mpq(0))
    return A


def identity(n: int, field: Field) -> np.ndarray:
    A = zeros(n, n, field)
    for i in range(n):
        A[i, i] = field.one
    return A


def asarray(rows, field: Field, ncols: int | None = None) -> np.ndarray:
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    A = zeros(len(rows), ncols, field)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                A[i, j] = field(v)
    return A


def _rref_q(A: np.ndarray) -> tuple:
    m, n = A.shape
    rows = [list(A[i]) for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = mpq(1) / rows[r][c]
        pr = [v * inv for v in rows[r]]
        rows[r] = pr
        for i in range(m):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    out = zeros(m, n, Field(0))
    for i in range(m):
        out[i, :] = rows[i]
    return out, pivots


def rref(A: np.ndarray, field: Field) -> tuple:
    """Reduced row echelon form (a copy) and the list of pivot columns."""
    if field.p:
        R = np.array(A, dtype=np.int64, copy=True)
        if R.size == 0:
            return R, []
        r, piv = rref_modp(R, field.p)
        return R, [int(c) for c in piv]
    if A.size == 0:
        return A.copy(), []
    return _rref_q(A)


def rank(A: np.ndarray, field: Field) -> int:
    return len(rref(A, field)[1])


def nullspace(A: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning {x : A x = 0}."""
    m, n = A.shape
    R, piv = rref(A, field)
    free = [c for c in range(n) if c not in set(piv)]
    N = zeros(len(free), n, field)
    for k, f in enumerate(free):
        N[k, f] = field.one
        for i, c in enumerate(piv):
            if R[i, f]:
                N[k, c] = field.neg(R[i, f])
    return N


def left_kernel(A: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning {y : y A = 0}."""
    return nullspace(A.T.copy() if field.p else np.array(A.T), field)


def solve_left(A: np.ndarray, B: np.ndarray, field: Field):
    """X with X A = B, or None when some row of B is outside the row space of A."""
    m, n = A.shape
    k = B.shape[0]
    if m == 0:
        return zeros(k, 0, field) if not np.any(B != 0) else None
    aug = zeros(n, m + k, field)
    aug[:, :m] = A.T
    aug[:, m:] = B.T
    R, piv = rref(aug, field)
    if any(c >= m for c in piv):
        return None
    X = zeros(k, m, field)
    for i, c in enumerate(piv):
        X[:, c] = R[i, m:]
    return X


def matmul(A: np.ndarray, B: np.ndarray, field: Field) -> np.ndarray:
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1], field)
    if field.p:
        return (A @ B) % field.p
    return A.dot(B)
