"""One-parameter group actions on state points and on solution fields.

Points are acted on by ``apply_point``. Solution fields are analytic
closures; ``transform_solution`` builds a new closure which pulls the
evaluation point back and mixes the field values.

A transform with parameter ``s`` is the pushforward of a solution graph by
``g_i(-s)``. For the scaling groups the printed rules use a factor lambda;
the bridge is lambda = e^s for g8 and g9 and lambda = e^-s for g13.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import evaluate
from .generators import standard_generators

__all__ = [
    "StatePoint",
    "SolutionField",
    "TransformSpec",
    "DomainError",
    "apply_point",
    "flow_check",
    "group_law_check",
    "inverse_check",
    "transform_solution",
    "composite_rotation",
    "graph_consistency",
    "lambda_from_s",
    "constant_state",
    "uniform_flow",
    "stratified_state",
    "control_field",
    "BUILTIN_SOLUTIONS",
]


class StatePoint(NamedTuple):
  t: float
  x: float
  y: float
  z: float
  u: float
  v: float
  w: float
  p: float
  q: float

  def as_array(self) -> np.ndarray:
    return np.array(self, dtype=float)


class DomainError(ValueError):
  pass


def apply_point(i: int, s: float, pt: Sequence) -> StatePoint:
  """exp(s X_i) applied to ``pt``. Components may be numpy arrays."""
  t, x, y, z, u, v, w, p, q = pt
  if i == 1:
    return StatePoint(t, x + s, y, z, u, v, w, p, q)
  if i == 2:
    return StatePoint(t, x, y + s, z, u, v, w, p, q)
  if i == 3:
    return StatePoint(t, x, y, z + s, u, v, w, p, q)
  if i == 4:
    return StatePoint(t + s, x, y, z, u, v, w, p, q)
  if i == 5:
    return StatePoint(t, x + s * t, y, z, u + s, v, w, p, q)
  if i == 6:
    return StatePoint(t, x, y + s * t, z, u, v + s, w, p, q)
  if i == 7:
    return StatePoint(t, x, y, z + s * t, u, v, w + s, p, q)
  if i == 8:
    e, m = math.exp(s), math.exp(-s)
    return StatePoint(e * t, x, y, z, m * u, m * v, m * w, p, e * e * q)
  if i == 9:
    e, m = math.exp(s), math.exp(-s)
    return StatePoint(t, e * x, e * y, e * z, e * u, e * v, e * w, p, m * m * q)
  c, sn = math.cos(s), math.sin(s)
  if i == 10:
    return StatePoint(t, x * c + y * sn, y * c - x * sn, z,
                      v * sn + u * c, v * c - u * sn, w, p, q)
  if i == 11:
    return StatePoint(t, x, y * c - z * sn, z * c + y * sn,
                      u, v * c - w * sn, w * c + v * sn, p, q)
  if i == 12:
    return StatePoint(t, x * c - z * sn, y, x * sn + z * c,
                      u * c - w * sn, v, w * c + u * sn, p, q)
  if i == 13:
    e = math.exp(s)
    return StatePoint(t, x, y, z, u, v, w, e * p, e * q)
  raise ValueError(f"generator index must be in 1..13, got {i}")


def _inf_norm(a: Sequence, b: Sequence) -> float:
  return float(max(np.max(np.abs(np.asarray(x, float) - np.asarray(y, float)))
                   for x, y in zip(a, b)))


def flow_check(i: int, pt: Sequence, s: float, step: float = 1e-3) -> float:
  """RK4 integration of the flow of X_i against the closed form."""
  X = standard_generators()[i - 1]
  f = lambda st: np.array(evaluate(X, st))
  n = max(1, int(math.ceil(abs(s) / step - 1e-9)))
  h = s / n
  y = np.array(pt, dtype=float)
  for _ in range(n):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
  return _inf_norm(y, apply_point(i, s, pt))


def group_law_check(i: int, s1: float, s2: float, pt: Sequence) -> float:
  a = apply_point(i, s1, apply_point(i, s2, pt))
  return _inf_norm(a, apply_point(i, s1 + s2, pt))


def inverse_check(i: int, s: float, pt: Sequence) -> float:
  return _inf_norm(apply_point(i, -s, apply_point(i, s, pt)), pt)


# solution fields

Box = tuple
Evaluator = Callable[..., tuple]
_DEFAULT_BOX = ((-5.0, 5.0),) * 4


@dataclass(frozen=True)
class SolutionField:
  """Pure evaluator (t, x, y, z) -> (u, v, w, p, q), vectorized over arrays.

  ``status`` is "exact" for known solutions, "non-solution" for control
  fields and "transformed" for derived fields.
  """

  evaluator: Evaluator
  domain: Box = _DEFAULT_BOX
  name: str = "field"
  status: str = "transformed"

  def __call__(self, t, x, y, z) -> tuple:
    return self.evaluator(t, x, y, z)

  def contains(self, t, x, y, z) -> bool:
    for c, (lo, hi) in zip((t, x, y, z), self.domain):
      c = np.asarray(c)
      if np.any(c < lo) or np.any(c > hi):
        return False
    return True


def _full(like, value) -> np.ndarray:
  return np.full(np.broadcast(*like).shape, float(value))


def constant_state(p0: float = 1.0, q0: float = 1.0, box: Box = _DEFAULT_BOX) -> SolutionField:
  def ev(t, x, y, z):
    c = (t, x, y, z)
    return (_full(c, 0), _full(c, 0), _full(c, 0), _full(c, p0), _full(c, q0))
  return SolutionField(ev, box, "constant", "exact")


def uniform_flow(u0: float = 0.3, v0: float = -0.2, w0: float = 0.1, p0: float = 1.0,
                 q0: float = 1.0, box: Box = _DEFAULT_BOX) -> SolutionField:
  def ev(t, x, y, z):
    c = (t, x, y, z)
    return (_full(c, u0), _full(c, v0), _full(c, w0), _full(c, p0), _full(c, q0))
  return SolutionField(ev, box, "uniform", "exact")


def stratified_state(p0: float = 1.0, box: Box = _DEFAULT_BOX) -> SolutionField:
  """At rest with uniform pressure and density 1 + x^2/10."""
  def ev(t, x, y, z):
    c = (t, x, y, z)
    q = 1.0 + np.asarray(x, float) ** 2 / 10.0
    return (_full(c, 0), _full(c, 0), _full(c, 0), _full(c, p0), q * np.ones(np.broadcast(*c).shape))
  return SolutionField(ev, box, "stratified", "exact")


def control_field(box: Box = _DEFAULT_BOX) -> SolutionField:
  """u = x^2 with everything else constant. Not a solution."""
  def ev(t, x, y, z):
    c = (t, x, y, z)
    u = np.asarray(x, float) ** 2 * np.ones(np.broadcast(*c).shape)
    return (u, _full(c, 0), _full(c, 0), _full(c, 1), _full(c, 1))
  return SolutionField(ev, box, "control", "non-solution")


BUILTIN_SOLUTIONS = {
    "constant": constant_state,
    "uniform": uniform_flow,
    "stratified": stratified_state,
    "control": control_field,
}


# transform specs

@dataclass(frozen=True)
class TransformSpec:
  """Either a single generator (``generator``, ``s``, optional ``lam``) or a
  composite (``c`` of six constants and ``s``)."""

  kind: str
  generator: int = 0
  s: float = 0.0
  lam: float | None = None
  c: tuple = field(default_factory=tuple)

  def __post_init__(self):
    if self.kind == "single":
      if not 1 <= self.generator <= 13:
        raise ValueError(f"generator index must be in 1..13, got {self.generator}")
      if self.lam is not None:
        if self.generator not in (8, 9, 13):
          raise ValueError("lambda applies to generators 8, 9 and 13 only")
        if self.lam == 0:
          raise ValueError("lambda must be nonzero")
    elif self.kind == "composite":
      if len(self.c) != 6:
        raise ValueError("composite needs six constants c1..c6")
      object.__setattr__(self, "c", tuple(float(v) for v in self.c))
      for k in (0, 1, 5):
        if self.c[k] <= 0:
          raise ValueError(f"c{k + 1} must be positive for real powers c^s")
    else:
      raise ValueError(f"unknown transform kind {self.kind!r}")

  @classmethod
  def single(cls, generator: int, s: float = 0.0, lam: float | None = None) -> "TransformSpec":
    return cls("single", int(generator), float(s), None if lam is None else float(lam))

  @classmethod
  def composite(cls, c: Sequence[float], s: float) -> "TransformSpec":
    return cls("composite", s=float(s), c=tuple(c))

  @classmethod
  def parse(cls, obj: dict) -> "TransformSpec":
    if "composite" in obj:
      comp = obj["composite"]
      return cls.composite(comp["c"], comp.get("s", 0.0))
    if "generator" in obj:
      lam = obj.get("lambda")
      return cls.single(obj["generator"], obj.get("s", 0.0), lam)
    raise ValueError("transform spec needs 'generator' or 'composite'")

  def to_json(self) -> dict:
    if self.kind == "composite":
      return {"composite": {"c": list(self.c), "s": self.s}}
    out = {"generator": self.generator, "s": self.s}
    if self.lam is not None:
      out["lambda"] = self.lam
    return out

  def label(self) -> str:
    if self.kind == "composite":
      return f"composite(s={self.s})"
    if self.lam is not None:
      return f"g{self.generator}(lambda={self.lam})"
    return f"g{self.generator}({self.s})"


def lambda_from_s(i: int, s: float) -> float:
  if i in (8, 9):
    return math.exp(s)
  if i == 13:
    return math.exp(-s)
  raise ValueError("only generators 8, 9 and 13 carry a lambda")


def composite_rotation(c3: float, c4: float, c5: float, s: float) -> np.ndarray:
  """Coefficient matrix of the composite coordinate map, scale factor removed."""
  s3, s4, s5 = math.sin(c3 * s), math.sin(c4 * s), math.sin(c5 * s)
  k3, k4, k5 = math.cos(c3 * s), math.cos(c4 * s), math.cos(c5 * s)
  return np.array([
      [s5 * s4 * s3 + k5 * k3, s3 * k5 - k3 * s4 * s5, -k4 * s5],
      [-s3 * k4, k3 * k4, -s4],
      [k3 * s5 - s3 * s4 * k5, k3 * s4 * k5 + s3 * s5, k4 * k5],
  ])


def _single_rule(i: int, s: float, lam: float | None):
  """(pullback of (t,x,y,z), map of field values) for one generator."""
  if i in (8, 9, 13) and lam is None:
    lam = lambda_from_s(i, s)
  c, sn = math.cos(s), math.sin(s)
  ident = lambda U, V, W, P, Q: (U, V, W, P, Q)
  if i == 1:
    return (lambda t, x, y, z: (t, x + s, y, z)), ident
  if i == 2:
    return (lambda t, x, y, z: (t, x, y + s, z)), ident
  if i == 3:
    return (lambda t, x, y, z: (t, x, y, z + s)), ident
  if i == 4:
    return (lambda t, x, y, z: (t + s, x, y, z)), ident
  if i == 5:
    return (lambda t, x, y, z: (t, x + s * t, y, z)), (lambda U, V, W, P, Q: (U - s, V, W, P, Q))
  if i == 6:
    return (lambda t, x, y, z: (t, x, y + s * t, z)), (lambda U, V, W, P, Q: (U, V - s, W, P, Q))
  if i == 7:
    return (lambda t, x, y, z: (t, x, y, z + s * t)), (lambda U, V, W, P, Q: (U, V, W - s, P, Q))
  if i == 8:
    return ((lambda t, x, y, z: (lam * t, x, y, z)),
            (lambda U, V, W, P, Q: (lam * U, lam * V, lam * W, P, Q / lam ** 2)))
  if i == 9:
    return ((lambda t, x, y, z: (t, lam * x, lam * y, lam * z)),
            (lambda U, V, W, P, Q: (U / lam, V / lam, W / lam, P, lam ** 2 * Q)))
  if i == 10:
    return ((lambda t, x, y, z: (t, x * c + y * sn, y * c - x * sn, z)),
            (lambda U, V, W, P, Q: (c * U - sn * V, sn * U + c * V, W, P, Q)))
  if i == 11:
    return ((lambda t, x, y, z: (t, x, y * c - z * sn, z * c + y * sn)),
            (lambda U, V, W, P, Q: (U, c * V + sn * W, c * W - sn * V, P, Q)))
  if i == 12:
    return ((lambda t, x, y, z: (t, x * c - z * sn, y, x * sn + z * c)),
            (lambda U, V, W, P, Q: (c * U + sn * W, V, c * W - sn * U, P, Q)))
  if i == 13:
    return (lambda t, x, y, z: (t, x, y, z)), (lambda U, V, W, P, Q: (U, V, W, lam * P, lam * Q))
  raise ValueError(f"generator index must be in 1..13, got {i}")


def _composite_rule(cs: tuple, s: float):
  c1, c2, c3, c4, c5, c6 = cs
  alpha, beta, kappa = c1 ** s, c2 ** s, c6 ** -s
  R = composite_rotation(c3, c4, c5, s)
  # the velocity factor must undo the coordinate rotation
  Rt = (alpha / beta) * R.T

  def pull(t, x, y, z):
    return (alpha * t,
            beta * (R[0, 0] * x + R[0, 1] * y + R[0, 2] * z),
            beta * (R[1, 0] * x + R[1, 1] * y + R[1, 2] * z),
            beta * (R[2, 0] * x + R[2, 1] * y + R[2, 2] * z))

  def mix(U, V, W, P, Q):
    return (Rt[0, 0] * U + Rt[0, 1] * V + Rt[0, 2] * W,
            Rt[1, 0] * U + Rt[1, 1] * V + Rt[1, 2] * W,
            Rt[2, 0] * U + Rt[2, 1] * V + Rt[2, 2] * W,
            kappa * P,
            (beta / alpha) ** 2 * kappa * Q)

  return pull, mix


def transform_solution(spec: TransformSpec, F: SolutionField) -> SolutionField:
  if spec.kind == "composite":
    pull, mix = _composite_rule(spec.c, spec.s)
  else:
    pull, mix = _single_rule(spec.generator, spec.s, spec.lam)

  def ev(t, x, y, z):
    pt = pull(t, x, y, z)
    if not F.contains(*pt):
      raise DomainError("domain exceeded")
    return mix(*F(*pt))

  status = "non-solution" if F.status == "non-solution" else "transformed"
  return SolutionField(ev, F.domain, f"{spec.label()}[{F.name}]", status)


def graph_consistency(i: int, s: float, F: SolutionField, pts: np.ndarray) -> float:
  """Compare the transformed field with the graph pushed by g_i(-s).

  ``pts`` has shape (n, 4). Returns the max deviation.
  """
  pts = np.asarray(pts, dtype=float)
  t, x, y, z = pts.T
  graph = (t, x, y, z) + tuple(F(t, x, y, z))
  moved = apply_point(i, -s, graph)
  G = transform_solution(TransformSpec.single(i, s), F)
  return _inf_norm(G(*moved[:4]), moved[4:])
