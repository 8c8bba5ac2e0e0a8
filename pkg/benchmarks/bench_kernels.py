"""Compare the compiled and pure-Python structure-constant kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from starred import _kernels_py

try:
    from starred import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def workload(seed=0, count=400):
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        n = rng.randint(1, 3)
        s = rng.randint(1, n + 1)
        nu = tuple(1 if k < s else -1 for k in range(n + 1))
        key = lambda: tuple(rng.randint(0, 3) for _ in range(n))
        cases.append((key(), key(), key(), key(), nu))
    return cases


def run(impl, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for c in cases:
            impl.reduced_star_terms(*c)
            impl.reduced_poisson_terms(*c)
            impl.reduced_mul_terms(*c)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--count", type=int, default=400)
    args = ap.parse_args()
    cases = workload(count=args.count)
    t_py = run(_kernels_py, cases, args.repeat)
    print(f"python  : {t_py * 1e3:8.1f} ms")
    if _compiled is None:
        print("compiled: not built")
        return
    t_c = run(_compiled, cases, args.repeat)
    print(f"compiled: {t_c * 1e3:8.1f} ms  (speedup {t_py / t_c:.1f}x)")


if __name__ == "__main__":
    main()
