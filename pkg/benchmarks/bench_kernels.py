"""Compare the numba and numpy tropical-value kernels.

    python3 benchmarks/bench_kernels.py --n 4 --k 100000 --repeat 5
"""
import argparse
import time

import numpy as np

from boundedratios import _kernels
from boundedratios.tropical import profile_for, sample_lambdas


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--k", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    _kernels.set_threads(args.threads)

    prof = profile_for(args.n)
    pts, offs = prof.packed()
    lams = sample_lambdas(prof.d, args.k, np.random.default_rng(args.seed))
    print(f"n={args.n} d={prof.d} points={len(pts)} coords={len(offs) - 1} lambdas={len(lams)}")

    t_np, ref = best_of(lambda: _kernels.tropical_values_numpy(lams, pts, offs), args.repeat)
    print(f"numpy : {t_np:.4f} s")
    if _kernels.tropical_values_numba is None:
        print("numba : not installed")
        return
    t0 = time.perf_counter()
    _kernels.tropical_values_numba(lams[:2], pts, offs)
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f} s")
    t_nb, out = best_of(lambda: _kernels.tropical_values_numba(lams, pts, offs), args.repeat)
    assert np.array_equal(out, ref), "kernels disagree"
    print(f"numba : {t_nb:.4f} s  (speed-up x{t_np / t_nb:.1f}, threads={_kernels.numba.get_num_threads()})")


if __name__ == "__main__":
    main()
