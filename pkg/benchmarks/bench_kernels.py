"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from rkgeo import _pykernels

try:
    from rkgeo import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    for n in (6, 10, 14):
        m = np.ascontiguousarray(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        yield f"permanent n={n}", "permanent", (m,)
    zeros = 0.9 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    for side in (100, 400):
        x = np.linspace(-0.99, 0.99, side)
        grid = (x[:, None] + 1j * x[None, :]).ravel()
        grid = np.ascontiguousarray(grid[np.abs(grid) < 1])
        yield f"blaschke 20 zeros, {grid.size} pts", "blaschke_product", (
            np.ascontiguousarray(zeros), grid)


def _values(r):
    # blaschke_product also returns the smallest denominator
    return np.asarray(r[0] if isinstance(r, tuple) else r)


def best(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'case':<34}{'python [s]':>12}{'cython [s]':>12}{'speedup':>9}  max|diff|")
    for label, name, a in cases(rng):
        tp = best(getattr(_pykernels, name), a, args.repeat)
        if _ckernels is None:
            print(f"{label:<34}{tp:12.3e}{'n/a':>12}{'':>9}")
            continue
        fc = getattr(_ckernels, name)
        tc = best(fc, a, args.repeat)
        diff = np.max(np.abs(_values(fc(*a)) - _values(getattr(_pykernels, name)(*a))))
        print(f"{label:<34}{tp:12.3e}{tc:12.3e}{tp / tc:9.1f}  {diff:.1e}")


if __name__ == "__main__":
    main()
