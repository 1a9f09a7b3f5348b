"""Compare the compiled and pure-Python Bareiss rank kernels.

Usage: python benchmarks/bench_rank.py [size] [repeats]
"""

import random
import sys
import time

from confren import _rank, _rank_py


def random_matrix(n, m, seed, density=0.3, bound=5):
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(m)]
            for _ in range(n)]


def best_of(fn, rows, repeats):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        r = fn(rows)
        best = min(best, time.perf_counter() - t)
    return r, best


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    size = int(argv[0]) if argv else 80
    repeats = int(argv[1]) if len(argv) > 1 else 3
    print("backend: %s" % _rank.BACKEND)
    for n in (size // 2, size, int(size * 1.5)):
        rows = random_matrix(n, n + 10, seed=n)
        r_py, t_py = best_of(_rank_py.rank, rows, repeats)
        r_fast, t_fast = best_of(_rank.rank, rows, repeats)
        if r_py != r_fast:
            raise SystemExit("rank mismatch at size %d: %d vs %d" % (n, r_py, r_fast))
        print("n=%4d rank=%4d python=%.4fs selected=%.4fs speedup=%.1fx"
              % (n, r_py, t_py, t_fast, t_py / t_fast if t_fast else float("inf")))


if __name__ == "__main__":
    main()
