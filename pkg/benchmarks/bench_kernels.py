"""Residual kernel timings: Cython against the numpy fallback.

    python benchmarks/bench_kernels.py --n 17 25 --repeat 5
"""

import argparse
import json
import time

import numpy as np

from lie_euler import _kernels_py
from lie_euler import pde_verify as pv

try:
  from lie_euler import _kernels
except ImportError:
  _kernels = None


def _best(fn, repeat: int) -> float:
  best = float("inf")
  for _ in range(repeat):
    t0 = time.perf_counter()
    fn()
    best = min(best, time.perf_counter() - t0)
  return best


def bench(n: int, repeat: int) -> dict:
  grid = pv.Grid.uniform(n)
  arrays = pv._sample(pv.smooth_control_field(), grid)
  out = {"n": n, "interior_points": grid.interior_count()}
  backends = {"numpy": _kernels_py}
  if _kernels is not None:
    backends["cython"] = _kernels
  maxima = {}
  for name, mod in backends.items():
    m, s = np.zeros(5), np.zeros(5)
    run = lambda: mod.accumulate(*arrays, grid.h, 1.4, 0, 1, n - 1, m, s)
    out[f"{name}_s"] = _best(run, repeat)
    maxima[name] = m.copy()
  if "cython" in maxima:
    out["speedup"] = out["numpy_s"] / out["cython_s"]
    out["max_norms_identical"] = bool(np.array_equal(maxima["numpy"], maxima["cython"]))
  return out


def main() -> None:
  ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  ap.add_argument("--n", type=int, nargs="+", default=[9, 17, 25])
  ap.add_argument("--repeat", type=int, default=3)
  args = ap.parse_args()
  for n in args.n:
    print(json.dumps(bench(n, args.repeat)))


if __name__ == "__main__":
  main()
