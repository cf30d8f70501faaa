"""Finite-difference residual certification of solution fields.

The five residuals are the momentum equations with the 1/q pressure terms
kept as written, then mass and pressure. Derivatives are second-order
central differences on interior points only.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .generators import EulerSystem
from .group_action import SolutionField, TransformSpec, transform_solution

try:
  if os.environ.get("LIE_EULER_PURE"):
    raise ImportError("pure backend requested")
  from . import _kernels as _backend
  BACKEND = "cython"
except ImportError:
  from . import _kernels_py as _backend
  BACKEND = "numpy"

from ._kernels_py import residual_fields as _residual_fields

__all__ = [
    "Grid",
    "ResidualReport",
    "ResidualError",
    "residual",
    "residual_fields",
    "symmetry_preservation",
    "PreservationResult",
    "convergence_order",
    "dump_csv",
    "smooth_control_field",
    "DENSITY_FLOOR",
    "DISCRETIZATION_FLOOR",
    "EQUATIONS",
    "BACKEND",
]

DENSITY_FLOOR = 1e-8
DISCRETIZATION_FLOOR = 1e-12
EQUATIONS = ("momentum_x", "momentum_y", "momentum_z", "mass", "pressure")
SCHEMES = {"central": 0, "forward": 1}


class ResidualError(ValueError):
  pass


def _threads() -> int:
  try:
    return max(1, int(os.environ.get("LIE_EULER_THREADS", "1")))
  except ValueError:
    return 1


@dataclass(frozen=True)
class Grid:
  box: tuple = ((0.0, 1.0),) * 4
  n: tuple = (17,) * 4
  interior: bool = True

  def __post_init__(self):
    object.__setattr__(self, "box", tuple((float(a), float(b)) for a, b in self.box))
    object.__setattr__(self, "n", tuple(int(k) for k in self.n))
    if len(self.box) != 4 or len(self.n) != 4:
      raise ValueError("grid needs four axes")
    for (a, b), k in zip(self.box, self.n):
      if k < 3:
        raise ValueError("need at least 3 points per axis")
      if not b > a:
        raise ValueError("spacing must be positive")

  @classmethod
  def uniform(cls, n: int = 17, lo: float = 0.0, hi: float = 1.0) -> "Grid":
    return cls(((lo, hi),) * 4, (n,) * 4)

  @classmethod
  def parse(cls, obj) -> "Grid":
    if isinstance(obj, int):
      return cls.uniform(obj)
    if isinstance(obj, str):
      return cls.uniform(int(obj))
    box = obj.get("box", ((0.0, 1.0),) * 4)
    n = obj.get("n", 17)
    return cls(tuple(box), (n,) * 4 if isinstance(n, int) else tuple(n))

  @property
  def h(self) -> tuple:
    return tuple((b - a) / (k - 1) for (a, b), k in zip(self.box, self.n))

  def halved(self) -> "Grid":
    return Grid(self.box, tuple(2 * k - 1 for k in self.n), self.interior)

  def axes(self) -> list:
    return [np.linspace(a, b, k) for (a, b), k in zip(self.box, self.n)]

  def mesh(self) -> tuple:
    return tuple(np.meshgrid(*self.axes(), indexing="ij"))

  def interior_count(self) -> int:
    return math.prod(k - 2 for k in self.n)

  def to_json(self) -> dict:
    return {"box": [list(b) for b in self.box], "n": list(self.n), "h": list(self.h)}


@dataclass(frozen=True)
class ResidualReport:
  max_norm: tuple
  l2_norm: tuple
  sample_count: int
  min_density_seen: float
  density_floor: float = DENSITY_FLOOR

  @property
  def valid(self) -> bool:
    return self.min_density_seen > self.density_floor

  @property
  def worst(self) -> float:
    return max(self.max_norm)

  def to_json(self) -> dict:
    return {
        "max_norm": dict(zip(EQUATIONS, self.max_norm)),
        "l2_norm": dict(zip(EQUATIONS, self.l2_norm)),
        "sample_count": self.sample_count,
        "min_density_seen": self.min_density_seen,
        "valid": self.valid,
    }


def _sample(F: SolutionField, grid: Grid) -> list:
  vals = F(*grid.mesh())
  shape = tuple(grid.n)
  return [np.ascontiguousarray(np.broadcast_to(np.asarray(f, dtype=float), shape)) for f in vals]


def residual(F: SolutionField, system: EulerSystem | None = None, grid: Grid | None = None,
             scheme: str = "central", density_floor: float = DENSITY_FLOOR,
             threads: int | None = None) -> ResidualReport:
  system = system or EulerSystem()
  grid = grid or Grid()
  U, V, W, P, Q = _sample(F, grid)
  qmin = float(Q.min())
  if not qmin > density_floor:
    raise ResidualError(f"density floor: min q = {qmin:g}")
  gamma = float(system.gamma)
  h = grid.h
  sch = SCHEMES[scheme]
  nt = grid.n[0]
  nthreads = min(threads or _threads(), nt - 2)
  bounds = np.linspace(1, nt - 1, nthreads + 1).astype(int)
  chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

  def run(chunk):
    # one partial sum per t slab, so the total does not depend on the chunking
    m = np.zeros(5)
    slabs = np.zeros((chunk[1] - chunk[0], 5))
    for k in range(chunk[0], chunk[1]):
      _backend.accumulate(U, V, W, P, Q, h, gamma, sch, k, k + 1, m, slabs[k - chunk[0]])
    return m, slabs

  if len(chunks) == 1:
    parts = [run(chunks[0])]
  else:
    with ThreadPoolExecutor(len(chunks)) as ex:
      parts = list(ex.map(run, chunks))
  maxn = np.max([m for m, _ in parts], axis=0)
  sumsq = np.zeros(5)
  for _, slabs in parts:
    for row in slabs:
      sumsq += row
  count = grid.interior_count()
  vol = math.prod(h)
  return ResidualReport(tuple(float(v) for v in maxn),
                        tuple(float(math.sqrt(v * vol)) for v in sumsq),
                        count, qmin, density_floor)


def residual_fields(F: SolutionField, system: EulerSystem | None = None,
                    grid: Grid | None = None, scheme: str = "central") -> tuple:
  """Signed per-point residuals on the interior, five arrays."""
  system = system or EulerSystem()
  grid = grid or Grid()
  U, V, W, P, Q = _sample(F, grid)
  return _residual_fields(U, V, W, P, Q, grid.h, float(system.gamma), SCHEMES[scheme])


def dump_csv(F: SolutionField, path: str, system: EulerSystem | None = None,
             grid: Grid | None = None) -> int:
  grid = grid or Grid()
  res = residual_fields(F, system, grid)
  mesh = [m[1:-1, 1:-1, 1:-1, 1:-1].ravel() for m in grid.mesh()]
  cols = [r.ravel() for r in res]
  with open(path, "w", newline="") as fh:
    wr = csv.writer(fh)
    wr.writerow(("t", "x", "y", "z") + EQUATIONS)
    for row in zip(*mesh, *cols):
      wr.writerow([repr(float(v)) for v in row])
  return len(cols[0])


@dataclass(frozen=True)
class PreservationResult:
  before: ResidualReport
  after: ResidualReport
  bound: float
  passed: bool | None  # None when the input is not a solution

  def to_json(self) -> dict:
    return {"before": self.before.to_json(), "after": self.after.to_json(),
            "bound": self.bound, "passed": self.passed}


def symmetry_preservation(spec: TransformSpec, F: SolutionField,
                          system: EulerSystem | None = None, grid: Grid | None = None,
                          floor: float = DISCRETIZATION_FLOOR) -> PreservationResult:
  before = residual(F, system, grid)
  after = residual(transform_solution(spec, F), system, grid)
  bound = 10.0 * max(before.worst, floor)
  passed = None if F.status == "non-solution" else after.worst <= bound
  return PreservationResult(before, after, bound, passed)


def smooth_control_field(box=((-5.0, 5.0),) * 4) -> SolutionField:
  """Trigonometric non-solution with nonzero truncation error in every equation."""
  def ev(t, x, y, z):
    return (np.sin(x + 0.5 * y) + 0.1 * t,
            np.cos(y - z) * 0.5,
            0.3 * np.sin(z + t),
            1.5 + 0.2 * np.sin(x + y + t),
            2.0 + 0.3 * np.cos(x - z))
  return SolutionField(ev, box, "smooth-control", "non-solution")


def convergence_order(F: SolutionField, system: EulerSystem | None = None,
                      grids: Sequence[Grid] | None = None, scheme: str = "central",
                      floor: float = 1e-11) -> dict:
  """Per-equation order from successive differences on nested grids.

  Each grid must halve the spacing of the previous one, so the coarsest
  interior is shared by all levels. The error estimate at level k is the
  max difference between the level k and k+1 residuals on those points;
  the order is the least-squares slope against log h. Returns
  "floor-limited" for equations whose estimates are at roundoff.
  """
  if grids is None:
    g = Grid.uniform(5)
    grids = [g, g.halved(), g.halved().halved(), g.halved().halved().halved()]
  if len(grids) < 3:
    raise ValueError("need at least 3 grids")
  for a, b in zip(grids, grids[1:]):
    if b.n != tuple(2 * k - 1 for k in a.n) or b.box != a.box:
      raise ValueError("grids must halve the spacing on a shared box")
  fields = [residual_fields(F, system, g, scheme) for g in grids]
  hs = [g.h[1] for g in grids[:-1]]
  out = {}
  for k, name in enumerate(EQUATIONS):
    # restrict every level to the coarsest interior so the max is over fixed points
    sub = [f[k][(slice(2 ** j - 1, None, 2 ** j),) * 4] for j, f in enumerate(fields)]
    errs = [float(np.max(np.abs(b - a))) for a, b in zip(sub, sub[1:])]
    if min(errs) <= floor:
      out[name] = "floor-limited"
    else:
      slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
      out[name] = float(slope)
  return out
