"""Benchmark the numba kernels against the pure-numpy fallback.

Both backend modules are imported directly, so the NGRAMLEX_DISABLE_NUMBA
flag has no effect on what is measured here. The first numba call
compiles; warmup calls are excluded from the timings. Reported times are
the best of --repeat runs.
"""
import argparse
import time

import numba
import numpy as np

from ngramlex.kernels import numba_backend, numpy_backend
from ngramlex.model import geometric_grid, zipf_probs


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5, help="timing runs per kernel")
    args = ap.parse_args()

    rows = []

    # expected-vocabulary sums over a large probability vector and L grid
    pv = zipf_probs(1.05, 1_000_000)
    grid = geometric_grid(1.0, 1e8, 16)
    vocab_args = (pv.values, pv._mults_f8, grid)
    numba_backend.expected_vocab_grid(*vocab_args)  # compile
    rows.append(
        (
            "expected_vocab_grid  (1e6 words, 129 lengths)",
            best_of(lambda: numpy_backend.expected_vocab_grid(*vocab_args), args.repeat),
            best_of(lambda: numba_backend.expected_vocab_grid(*vocab_args), args.repeat),
        )
    )

    # H(beta), G(beta) partial power sums, as evaluated inside the MLE
    log_r = np.log(np.arange(1, 1_000_001, dtype=np.float64))
    betas = np.linspace(0.5, 2.5, 50)

    def power_sums(backend):
        for b in betas:
            backend.zipf_power_sums(log_r, float(b))

    numba_backend.zipf_power_sums(log_r, 1.0)  # compile
    rows.append(
        (
            "zipf_power_sums      (1e6 ranks x 50 betas)",
            best_of(lambda: power_sums(numpy_backend), args.repeat),
            best_of(lambda: power_sums(numba_backend), args.repeat),
        )
    )

    # Monte Carlo distinct-count sampling
    pv_mc = zipf_probs(1.2, 10_000)
    alias_j, alias_q = pv_mc._alias
    mc_args = (
        alias_j,
        alias_q,
        pv_mc._group_offsets,
        pv_mc._mults_f8,
        2000,
        2000,
        np.uint64(0),
    )
    numba_backend.mc_distinct_counts(*mc_args[:4], 10, 2, np.uint64(0))  # compile
    if not np.array_equal(
        numpy_backend.mc_distinct_counts(*mc_args),
        numba_backend.mc_distinct_counts(*mc_args),
    ):
        raise SystemExit("backends disagree on the sample counts")
    rows.append(
        (
            "mc_distinct_counts   (L=2000, 2000 trials)",
            best_of(lambda: numpy_backend.mc_distinct_counts(*mc_args), args.repeat),
            best_of(lambda: numba_backend.mc_distinct_counts(*mc_args), args.repeat),
        )
    )

    width = max(len(r[0]) for r in rows)
    # the parallel kernels scale with this; the element-wise ones are
    # SIMD-bound and roughly tie numpy on a single thread
    print(f"numba threads: {numba.get_num_threads()}")
    print(f"{'kernel'.ljust(width)}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(
            f"{name.ljust(width)}  {t_np * 1e3:>8.1f}ms  {t_nb * 1e3:>8.1f}ms"
            f"  {t_np / t_nb:>7.1f}x"
        )


if __name__ == "__main__":
    main()
