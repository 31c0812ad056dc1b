"""Row reduction kernels over F_p on int64 arrays.

``rref_modp`` dispatches to a numba-compiled loop unless the environment
variable ``TWISTED_SECTIONS_NO_NUMBA`` is set (to anything but ``0``/empty),
in which case a vectorized numpy elimination is used.  Both produce the same
reduced row echelon form.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("TWISTED_SECTIONS_NO_NUMBA", "") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - exercised with the env flag
    njit = None


def _rref_numpy(A: np.ndarray, p: int) -> tuple:
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


if njit is not None:

    @njit(cache=True)
    def _inv_mod(a, p):
        t, new_t = 0, 1
        r, new_r = p, a % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_numba(A, p):
        m, n = A.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    tmp = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = tmp
            inv = _inv_mod(A[r, c], p)
            for j in range(c, n):
                A[r, j] = (A[r, j] * inv) % p
            for i in range(m):
                if i != r and A[i, c] != 0:
                    f = A[i, c]
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r]

else:
    _rref_numba = None


def numba_enabled() -> bool:
    return _rref_numba is not None


def rref_modp(A: np.ndarray, p: int, backend: str | None = None) -> tuple:
    """In-place RREF of an int64 array with entries in [0, p); returns (rank, pivots)."""
    if backend is None:
        backend = "numba" if _rref_numba is not None else "numpy"
    if backend == "numba":
        if _rref_numba is None:
            raise RuntimeError("numba backend unavailable")
        r, piv = _rref_numba(A, p)
        return int(r), piv
    return _rref_numpy(A, p)
