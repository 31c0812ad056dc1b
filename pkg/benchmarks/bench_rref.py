"""Time the mod-p RREF kernel: numba against the numpy fallback.

Run with ``python3 benchmarks/bench_rref.py [--sizes 50 100 200] [--repeat 5]``.
Each random matrix is reduced by both backends and the results are compared.
"""

import argparse
import time

import numpy as np

from twisted_sections.linalg.kernels import numba_enabled, rref_modp

P = 32003


def best_of(fn, A, repeat):
    best = float("inf")
    for _ in range(repeat):
        B = A.copy()
        t0 = time.perf_counter()
        out = fn(B)
        best = min(best, time.perf_counter() - t0)
    return best, B, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not numba_enabled():
        print("numba backend unavailable (TWISTED_SECTIONS_NO_NUMBA set or numba missing)")
        return
    rng = np.random.default_rng(args.seed)
    # warm up the JIT so compile time is not counted
    rref_modp(rng.integers(0, P, (4, 4), dtype=np.int64), P, "numba")

    print(f"{'shape':>12} {'rank':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        # rank-deficient on purpose: the kernel sees zero rows as in real syzygy matrices
        r = (3 * n) // 4
        A = (rng.integers(0, P, (n, r), dtype=np.int64) @ rng.integers(0, P, (r, n + n // 2), dtype=np.int64)) % P
        t_np, B_np, (rk_np, piv_np) = best_of(lambda X: rref_modp(X, P, "numpy"), A, args.repeat)
        t_nb, B_nb, (rk_nb, piv_nb) = best_of(lambda X: rref_modp(X, P, "numba"), A, args.repeat)
        assert rk_np == rk_nb and list(piv_np) == list(piv_nb) and np.array_equal(B_np, B_nb)
        print(f"{str(A.shape):>12} {rk_nb:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
