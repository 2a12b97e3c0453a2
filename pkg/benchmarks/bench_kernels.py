"""Compare the compiled and numpy reduced-density kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time
from math import sqrt

import numpy as np

from trilevel import _kernels_py
from trilevel.dressed import QuantizedParams, entangled_coefficients
from trilevel.states import CoherentField, StateVector3

try:
    from trilevel import _kernels
except ImportError:
    _kernels = None

SCENARIOS = {
    "lambda fig2, case I": (QuantizedParams("lambda", 0.2, 0.1), CoherentField(sqrt(20), sqrt(30)),
                            StateVector3.basis("lower"), np.linspace(0, 400, 1001)),
    "lambda, mixed atom": (QuantizedParams("lambda", 0.2, 0.1), CoherentField(sqrt(20), sqrt(30)),
                           StateVector3(0.6, 0.0, 0.8), np.linspace(0, 400, 1001)),
    "cascade fig4": (QuantizedParams("cascade", 0.1), CoherentField(sqrt(35)),
                     StateVector3.basis("lower"), np.linspace(0, 1200, 12001)),
}


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'scenario':<24}{'points':>10}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>9}{'max diff':>11}")
    for name, (p, fld, atom, times) in SCENARIOS.items():
        c = entangled_coefficients(p, atom, fld)
        A, B, D, src = c.active()
        args_k = (A, B, D, src, c.omega, times)
        t_py, r_py = best_of(lambda: _kernels_py.density_series(*args_k), args.repeat)
        if _kernels is None:
            print(f"{name:<24}{A.shape[-1] * len(times):>10}{t_py:>12.4f}{'n/a':>12}")
            continue
        t_cy, r_cy = best_of(lambda: _kernels.density_series(*args_k), args.repeat)
        diff = np.abs(r_py - r_cy).max()
        print(f"{name:<24}{A.shape[-1] * len(times):>10}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.1f}{diff:>11.1e}")


if __name__ == "__main__":
    main()
