#!/usr/bin/env python3
"""Benchmark: compiled vs pure-numpy scatter kernels on the wedge hot loop.

The recognition suites spend their time computing Omega^{n+1} and
(Omega ^ conj Omega)^n through repeated wedge products; this script times
the underlying scatter kernel on those exact table shapes and the
end-to-end power criterion.

Usage: python benchmarks/bench_kernels.py [--repeats 200]
"""

import argparse
import time

import numpy as np

from csympl import _scatter_py, multiindex
from csympl.csymplectic import is_c_symplectic_power, random_c_symplectic

try:
    from csympl import _fastscatter
except ImportError:
    _fastscatter = None


def time_callable(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_scatter(repeats):
    print(f"{'shape':<26} {'entries':>8} {'pure':>12} {'compiled':>12} {'speedup':>8}")
    rng = np.random.default_rng(0)
    for dim, p, q in ((8, 2, 2), (8, 4, 2), (12, 2, 2), (12, 6, 2), (16, 4, 4)):
        ia, ib, iout, sign = multiindex.wedge_table(dim, p, q)
        na, nb = multiindex.coefficient_count(dim, p), multiindex.coefficient_count(dim, q)
        nout = multiindex.coefficient_count(dim, p + q)
        a = rng.standard_normal(na) + 1j * rng.standard_normal(na)
        b = rng.standard_normal(nb) + 1j * rng.standard_normal(nb)
        pure = time_callable(lambda: _scatter_py.wedge_scatter(ia, ib, iout, sign, a, b, nout), repeats)
        if _fastscatter is None:
            print(f"({dim},{p})^({dim},{q}){'':<12} {len(ia):>8} {pure * 1e6:>10.1f}us {'n/a':>12} {'-':>8}")
            continue
        fast = time_callable(lambda: _fastscatter.wedge_scatter(ia, ib, iout, sign, a, b, nout), repeats)
        label = f"dim={dim} {p}-form ^ {q}-form"
        print(f"{label:<26} {len(ia):>8} {pure * 1e6:>10.1f}us {fast * 1e6:>10.1f}us {pure / fast:>7.1f}x", flush=True)


def bench_power_criterion(repeats):
    import os
    import subprocess
    import sys

    print("\nend-to-end power criterion (500 forms, dim 12):", flush=True)
    code = (
        "import time, numpy as np\n"
        "from csympl.csymplectic import is_c_symplectic_power, random_c_symplectic\n"
        "from csympl.kernels import BACKEND\n"
        "rng = np.random.default_rng(0)\n"
        "forms = [random_c_symplectic(rng, 12)[0] for _ in range(50)]\n"
        "start = time.perf_counter()\n"
        "for _ in range(10):\n"
        "    for f in forms:\n"
        "        is_c_symplectic_power(f)\n"
        "print(f'  {BACKEND:<8} {time.perf_counter() - start:.2f}s')\n"
    )
    for env_extra in ({}, {"CSYMPL_PURE": "1"}):
        env = dict(os.environ, **env_extra)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()
    if _fastscatter is None:
        print("compiled extension not built; showing pure timings only\n")
    bench_scatter(args.repeats)
    bench_power_criterion(args.repeats)


if __name__ == "__main__":
    main()
