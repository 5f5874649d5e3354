"""Timing comparison of the exhaustive-search backends.

Runs the numba-compiled kernel and the vectorized numpy sweep on the same
inputs: a worst-case infeasible instance (full 2**n enumeration) and a
satisfiable instance whose first solution sits deep in the mask order.
Results must agree bit for bit; timings go to standard output.

Run:  python benchmarks/bench_oracle.py [n]
"""

from __future__ import annotations

import sys
import time

import numpy as np

from surfcob._kernels import _load_numba_kernel, _search_numpy


def _bench(fn, p, targets, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(p, targets)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    rng = np.random.default_rng(0)

    # worst case: every point hits both components once, targets unreachable,
    # so both backends enumerate all 2**n masks
    p_full = np.ones((2, n), dtype=np.int64)
    t_impossible = np.array([n + 2, -n - 2], dtype=np.int64)

    # satisfiable late: the all-minus vector (mask 2**n - 1) is the only hit
    p_late = np.ones((1, n), dtype=np.int64)
    t_late = np.array([-n], dtype=np.int64)

    try:
        numba_search = _load_numba_kernel()
    except Exception as exc:  # pragma: no cover - depends on environment
        print(f"numba unavailable ({exc}); benchmarking numpy only")
        numba_search = None

    cases = [
        ("infeasible full sweep", p_full, t_impossible),
        ("last-mask solution", p_late, t_late),
        (
            "random 5-component",
            rng.integers(0, 3, size=(5, n)).astype(np.int64),
            np.array([n + 1] * 5, dtype=np.int64),
        ),
    ]

    print(f"n = {n} points, {2 ** n} masks per sweep")
    for name, p, targets in cases:
        r_np, t_np = _bench(_search_numpy, p, targets)
        line = f"{name:24s}  numpy {t_np * 1e3:9.2f} ms"
        if numba_search is not None:
            numba_search(p[:, :2], targets * 0)  # warm the compilation cache
            r_nb, t_nb = _bench(numba_search, p, targets)
            if r_nb != r_np:
                raise SystemExit(
                    f"backend disagreement on {name}: numba {r_nb} numpy {r_np}"
                )
            line += f"  numba {t_nb * 1e3:9.2f} ms  speedup {t_np / t_nb:6.1f}x"
        print(line + f"  result mask {r_np}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
