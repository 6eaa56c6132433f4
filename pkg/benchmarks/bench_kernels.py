"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 10000 100000 1000000] [--repeat 3]

Also times one end-to-end workload (truncating a double nerve) under each
backend by re-importing the package with ``NERFKIT_PURE`` set.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from nerfkit._core import _pykernels

try:
    from nerfkit._core import _ckernels
except ImportError:
    _ckernels = None


def _uf_input(n, seed=0):
    rng = np.random.default_rng(seed)
    m = n // 2
    return n, rng.integers(0, n, m), rng.integers(0, n, m)


def _key_input(n, seed=0):
    rng = np.random.default_rng(seed)
    keys = rng.permutation(4 * n)[:n].astype(np.int64)
    query = rng.integers(0, 4 * n, n).astype(np.int64)
    return keys, query


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench(sizes, repeat):
    rows = []
    for n in sizes:
        args = _uf_input(n)
        keys, query = _key_input(n)
        for name, mod in (("python", _pykernels), ("cython", _ckernels)):
            if mod is None:
                continue
            t_uf = best(lambda: mod.uf_min_labels(*args), repeat)
            t_kt = best(lambda: mod.KeyTable(keys).find(query), repeat)
            rows.append((n, name, t_uf, t_kt))
        if _ckernels is not None:
            assert np.array_equal(_pykernels.uf_min_labels(*args), _ckernels.uf_min_labels(*args))
            assert np.array_equal(_pykernels.KeyTable(keys).find(query),
                                  _ckernels.KeyTable(keys).find(query))
    return rows


WORKLOAD = ("import time; from nerfkit._core import BACKEND; from nerfkit import double_nerve, "
            "truncation_tower; from nerfkit.fixtures import weak_cocycle; t=time.perf_counter(); "
            "phi=double_nerve(weak_cocycle(), [(3,2),(2,4)]); truncation_tower(phi, 2); "
            "print(BACKEND, time.perf_counter()-t)")


def workload():
    out = []
    for pure in ("1", "0"):
        env = dict(os.environ, NERFKIT_PURE=pure)
        res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                             text=True, check=True)
        backend, secs = res.stdout.split()
        out.append((backend, float(secs)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--no-workload", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'n':>9} {'backend':>8} {'uf_min_labels':>14} {'KeyTable':>10}")
    for n, name, t_uf, t_kt in bench(args.sizes, args.repeat):
        print(f"{n:>9} {name:>8} {t_uf:>13.4f}s {t_kt:>9.4f}s")
    if not args.no_workload:
        for backend, secs in workload():
            print(f"double nerve + truncation tower, {backend}: {secs:.3f}s")


if __name__ == "__main__":
    main()
