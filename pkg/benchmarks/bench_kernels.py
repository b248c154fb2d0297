"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 256 1024 4096] [--repeat 20]

The full right-hand side is timed by reloading gnflow with each backend
forced through ``GNFLOW_KERNELS``.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from gnflow import _pykernels

try:
    from gnflow import _ckernels
except ImportError:
    _ckernels = None


def kernel_inputs(n, rng):
    dx = 80.0 / n
    lower, upper = -rng.uniform(0.5, 1.0, (2, n))
    diag = 3.0 + np.abs(lower) + np.abs(upper)
    x = np.arange(n) * dx
    lifted = x + 0.3 * np.sin(2 * np.pi * x / 80.0)
    slopes = 1 + 0.3 * 2 * np.pi / 80.0 * np.cos(2 * np.pi * x / 80.0)
    pts = rng.uniform(0, 80.0, n)
    return dict(lower=lower, diag=diag, upper=upper, rhs=rng.normal(size=n), dx=dx,
                lifted=lifted, slopes=slopes, pts=pts, bhalf=rng.uniform(1, 2, n))


def kernel_cases(mod, a):
    return {
        "cyclic_tridiag": lambda: mod.cyclic_tridiag(a["lower"], a["diag"], a["upper"], a["rhs"]),
        "flux_apply": lambda: mod.flux_apply(a["diag"], a["bhalf"], a["rhs"], 1 / a["dx"] ** 2),
        "hermite_eval": lambda: mod.hermite_eval(a["lifted"], a["slopes"], a["dx"], a["pts"]),
        "hermite_invert": lambda: mod.hermite_invert(a["lifted"], a["slopes"], a["dx"], 80.0, a["pts"]),
    }


def best_of(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


RHS_SNIPPET = """
import timeit, numpy as np
from gnflow import PeriodicGrid, FlowMapState, evaluate_F, BACKEND
from gnflow.diagnostics import solitary_wave
g = PeriodicGrid(80.0, {n}); s = solitary_wave(0.2, g)
st = FlowMapState(0.1 * np.sin(2 * np.pi * g.x / 80), s.u)
fn = lambda: evaluate_F(g, st, s.h)
print(BACKEND, min(timeit.repeat(fn, number=5, repeat={repeat})) / 5)
"""


def time_rhs(n, repeat, backend):
    env = dict(os.environ, GNFLOW_KERNELS=backend)
    out = subprocess.run([sys.executable, "-c", RHS_SNIPPET.format(n=n, repeat=repeat)],
                         env=env, capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096])
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run `python3 setup.py build_ext --inplace`")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'n':>7}{'python [us]':>14}{'cython [us]':>14}{'speedup':>10}")
    for n in args.sizes:
        a = kernel_inputs(n, rng)
        py, cy = kernel_cases(_pykernels, a), kernel_cases(_ckernels, a)
        for name in py:
            tp, tc = best_of(py[name], args.repeat), best_of(cy[name], args.repeat)
            print(f"{name:<16}{n:>7}{tp * 1e6:>14.1f}{tc * 1e6:>14.1f}{tp / tc:>10.1f}")
        _, tp = time_rhs(n, args.repeat, "python")
        backend, tc = time_rhs(n, args.repeat, "auto")
        label = "evaluate_F" if backend == "cython" else "evaluate_F*"
        print(f"{label:<16}{n:>7}{tp * 1e6:>14.1f}{tc * 1e6:>14.1f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
