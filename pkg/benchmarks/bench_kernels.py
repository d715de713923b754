"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py --seed 0 --repeat 5

The first numba call compiles (or loads from cache), so each kernel is
warmed up once before timing. Results are checked for agreement.
"""

import argparse
import time

import numpy as np

from pdthresh import _kernels
from pdthresh.sampling import random_pd, random_tridiagonal_pd


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(gen, n_ldl, n_batch, batch_len):
    pd = [random_pd(n, gen) for n in n_ldl]
    tri = [random_tridiagonal_pd(batch_len, gen) for _ in range(n_batch)]
    diags = np.array([np.diag(m) for m in tri])
    offs = np.array([np.diag(m, 1) for m in tri])
    sym = gen.standard_normal((max(n_ldl), max(n_ldl)))
    sym = (sym + sym.T) / 2
    return [
        (f"ldl_scan n={n}", lambda a=a: _kernels.ldl_scan(a, 1e-10),
         lambda a=a: _kernels.NUMPY_IMPLS["ldl_scan"](a, 1e-10))
        for n, a in zip(n_ldl, pd)
    ] + [
        (f"batch_continued_fraction {n_batch}x{batch_len}",
         lambda: _kernels.batch_continued_fraction(diags, offs),
         lambda: _kernels.NUMPY_IMPLS["batch_continued_fraction"](diags, offs)),
        (f"continued_fraction x{n_batch}",
         lambda: [_kernels.continued_fraction(d, o) for d, o in zip(diags, offs)],
         lambda: [_kernels.NUMPY_IMPLS["continued_fraction"](d, o) for d, o in zip(diags, offs)]),
        (f"level_threshold n={sym.shape[0]}", lambda: _kernels.level_threshold(sym, 0.5),
         lambda: _kernels.NUMPY_IMPLS["level_threshold"](sym, 0.5)),
    ]


def agree(x, y):
    if isinstance(x, tuple):
        return x[:2] == y[:2] and np.isclose(x[2], y[2], rtol=1e-9)
    return np.allclose(np.asarray(x), np.asarray(y), rtol=1e-12, equal_nan=True)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 128, 512])
    ap.add_argument("--batch", type=int, default=2000)
    ap.add_argument("--batch-len", type=int, default=15)
    args = ap.parse_args(argv)

    if _kernels.backend() != "numba":
        print("numba backend disabled (PDTHRESH_NUMBA); both columns time the numpy path")
    gen = np.random.default_rng(args.seed)
    print(f"{'kernel':<40} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}  agree")
    for name, fast, slow in cases(gen, args.sizes, args.batch, args.batch_len):
        ok = agree(fast(), slow())  # also warms up the jit
        tf = best_of(fast, args.repeat)
        ts = best_of(slow, args.repeat)
        print(f"{name:<40} {tf * 1e3:12.3f} {ts * 1e3:12.3f} {ts / tf:8.1f}x  {'yes' if ok else 'NO'}")


if __name__ == "__main__":
    main()
