"""Symmetry generators of the 3D Euler system and their verification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    BASE,
    DEPENDENT,
    INDEPENDENT,
    Polynomial,
    VectorField,
    prolong1,
)

__all__ = [
    "EulerSystem",
    "GeneratorParameters",
    "SymbolicResidual",
    "InvarianceResult",
    "Violation",
    "standard_generators",
    "generator_from_parameters",
    "parameter_basis",
    "symbolic_residual",
    "general_xi_eta",
    "verify_determining",
    "determining_equations",
    "corrupt",
    "infinitesimal_invariance",
    "errata",
]

P = {n: Polynomial.var(n) for n in BASE}
J = {f"{d}_{i}": Polynomial.var(f"{d}_{i}") for d in DEPENDENT for i in INDEPENDENT}
G = Polynomial.var("gamma")
t, x, y, z, u, v, w, p, q = (P[n] for n in BASE)


@dataclass(frozen=True)
class EulerSystem:
  gamma: float | Fraction = Fraction(7, 5)

  @property
  def warning(self) -> bool:
    """True for adiabatic indices below 1 (non-physical, still accepted)."""
    return self.gamma < 1

  def rational_gamma(self) -> Fraction:
    g = self.gamma
    if isinstance(g, Fraction):
      return g
    if isinstance(g, int):
      return Fraction(g)
    raise TypeError("the symbolic path needs a rational gamma")


@dataclass(frozen=True)
class GeneratorParameters:
  a: tuple

  def __post_init__(self):
    vals = tuple(Fraction(c) for c in self.a)
    if len(vals) != 13:
      raise ValueError("need 13 parameters a1..a13")
    object.__setattr__(self, "a", vals)

  @classmethod
  def unit(cls, k: int) -> "GeneratorParameters":
    return cls(tuple(1 if i == k else 0 for i in range(1, 14)))

  @classmethod
  def random(cls, rng: random.Random, bound: int = 9) -> "GeneratorParameters":
    return cls(tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                     for _ in range(13)))


@dataclass(frozen=True)
class SymbolicResidual:
  equations: tuple


def _field(**kw) -> VectorField:
  return VectorField(kw)


def standard_generators() -> list:
  """X1..X13 (0-indexed list)."""
  return [
      _field(x=1),
      _field(y=1),
      _field(z=1),
      _field(t=1),
      _field(x=t, u=1),
      _field(y=t, v=1),
      _field(z=t, w=1),
      _field(t=t, u=-u, v=-v, w=-w, q=2 * q),
      _field(x=x, y=y, z=z, u=u, v=v, w=w, q=-2 * q),
      _field(x=y, y=-x, u=v, v=-u),
      _field(y=-z, z=y, v=-w, w=v),
      _field(x=-z, z=x, u=-w, w=u),
      _field(q=q, p=p),
  ]


# a_k -> (sign, generator number)
_BASIS = {1: (1, 8), 2: (1, 4), 3: (1, 5), 4: (1, 9), 5: (1, 10), 6: (-1, 12),
          7: (1, 1), 8: (1, 6), 9: (-1, 11), 10: (1, 2), 11: (1, 7), 12: (1, 3),
          13: (1, 13)}


def parameter_basis() -> dict:
  """Map a_k to (sign, i) meaning a_k multiplies sign * X_i."""
  return dict(_BASIS)


def general_xi_eta(params: GeneratorParameters) -> tuple:
  """Coefficients xi1..xi4, eta_u, eta_v, eta_w, eta_p, eta_q."""
  a = (None,) + params.a
  xi1 = a[1] * t + a[2]
  xi2 = a[3] * t + a[4] * x + a[5] * y + a[6] * z + a[7]
  xi3 = a[8] * t - a[5] * x + a[4] * y + a[9] * z + a[10]
  xi4 = a[11] * t - a[6] * x - a[9] * y + a[4] * z + a[12]
  eta_u = (a[4] - a[1]) * u + a[5] * v + a[6] * w + a[3]
  eta_v = -a[5] * u + (a[4] - a[1]) * v + a[9] * w + a[8]
  eta_w = -a[6] * u - a[9] * v + (a[4] - a[1]) * w + a[11]
  eta_p = a[13] * p
  eta_q = (2 * a[1] - 2 * a[4] + a[13]) * q
  return (xi1, xi2, xi3, xi4, eta_u, eta_v, eta_w, eta_p, eta_q)


def generator_from_parameters(params: GeneratorParameters) -> VectorField:
  return VectorField(general_xi_eta(params))


def symbolic_residual(system: EulerSystem | None = None, symbolic_gamma: bool = False) -> SymbolicResidual:
  """The five Euler equations, momentum rows multiplied through by q."""
  gam = G if symbolic_gamma else Polynomial.const((system or EulerSystem()).rational_gamma())
  div = J["u_x"] + J["v_y"] + J["w_z"]
  eqs = []
  for d, dp in (("u", "p_x"), ("v", "p_y"), ("w", "p_z")):
    adv = u * J[f"{d}_x"] + v * J[f"{d}_y"] + w * J[f"{d}_z"]
    eqs.append(q * J[f"{d}_t"] + q * adv + J[dp])
  eqs.append(J["q_t"] + q * div + u * J["q_x"] + v * J["q_y"] + w * J["q_z"])
  eqs.append(J["p_t"] + gam * p * div + u * J["p_x"] + v * J["p_y"] + w * J["p_z"])
  return SymbolicResidual(tuple(eqs))


# determining equations ------------------------------------------------------

@dataclass(frozen=True)
class Violation:
  family: str
  label: str
  remainder: Polynomial

  def to_json(self) -> dict:
    return {"family": self.family, "equation": self.label, "remainder": str(self.remainder)}


def _d(f: Polynomial, *names: str) -> Polynomial:
  for n in names:
    f = f.diff(n)
  return f


def determining_equations(coeffs: Sequence[Polynomial]) -> list:
  """(family, label, expression) triples that must vanish identically.

  ``coeffs`` is (xi1..xi4, eta_u, eta_v, eta_w, eta_p, eta_q).
  """
  xi1, xi2, xi3, xi4, e1, e2, e3, ep, eq_ = coeffs
  out = []
  dep = ("u", "v", "w", "q", "p")

  def add(fam, label, expr):
    out.append((fam, label, expr))

  add("xi1", "xi1_tt", _d(xi1, "t", "t"))
  for n in ("x", "y", "z") + dep:
    add("xi1", f"xi1_{n}", _d(xi1, n))
  for n in dep:
    add("xi2", f"xi2_{n}", _d(xi2, n))
  add("xi2", "xi2_tt", _d(xi2, "t", "t"))
  add("xi2", "xi2_ty", _d(xi2, "t", "y"))
  add("xi2", "xi2_yy", _d(xi2, "y", "y"))
  add("xi2", "xi2_x - xi3_y", _d(xi2, "x") - _d(xi3, "y"))
  for n in dep:
    add("xi3", f"xi3_{n}", _d(xi3, n))
  add("xi3", "xi3_tt", _d(xi3, "t", "t"))
  add("xi3", "xi3_y - xi4_z", _d(xi3, "y") - _d(xi4, "z"))
  for n in ("w", "q", "p"):
    add("xi4", f"xi4_{n}", _d(xi4, n))
  for pair in ("tt", "tx", "ty", "xx", "xy", "yy"):
    add("xi4", f"xi4_{pair}", _d(xi4, pair[0], pair[1]))
  add("coupling", "xi3_x + xi2_y", _d(xi3, "x") + _d(xi2, "y"))
  add("coupling", "xi3_z + xi4_y", _d(xi3, "z") + _d(xi4, "y"))
  add("coupling", "xi4_v - xi4_u", _d(xi4, "v") - _d(xi4, "u"))
  add("coupling", "xi2_z + xi4_x", _d(xi2, "z") + _d(xi4, "x"))

  add("eta_velocity", "eta_u",
      e1 - (u * (_d(xi2, "x") - _d(xi1, "t")) + _d(xi2, "t") + v * _d(xi2, "y") - w * _d(xi4, "x")))
  add("eta_velocity", "eta_v",
      e2 - (-w * _d(xi4, "y") + _d(xi3, "t") - u * _d(xi2, "y") + v * (_d(xi3, "y") - _d(xi1, "t"))))
  add("eta_velocity", "eta_w",
      e3 - (u * _d(xi4, "x") + _d(xi4, "t") + v * _d(xi4, "y") + w * (_d(xi4, "z") - _d(xi1, "t"))))
  # density coefficient, cleared of the 1/p factor
  add("eta_thermo", "p*eta_q - q*eta_p - 2pq(xi1_t - xi2_x)",
      p * eq_ - q * ep - 2 * p * q * (_d(xi1, "t") - _d(xi2, "x")))
  for n in ("t", "x", "y", "z", "u", "v", "w", "q"):
    add("eta_thermo", f"eta_p_{n}", _d(ep, n))
  add("eta_thermo", "eta_p - p*eta_p_p", ep - p * _d(ep, "p"))
  return out


FAMILIES = ("xi1", "xi2", "xi3", "xi4", "coupling", "eta_velocity", "eta_thermo")


def verify_determining(params: GeneratorParameters | Sequence[Polynomial]) -> list:
  """Violated determining equations for a parameter vector or raw coefficients."""
  coeffs = general_xi_eta(params) if isinstance(params, GeneratorParameters) else tuple(params)
  return [Violation(f, lab, e) for f, lab, e in determining_equations(coeffs) if e]


# one corruption per family, applied as an additive term to a coefficient slot
_CORRUPTIONS = {
    "xi1": (0, x),
    "xi2": (1, x * x),
    "xi3": (2, t * t),
    "xi4": (3, x * y),
    "coupling": (2, x),
    "eta_velocity": (4, u * v),
    "eta_thermo": (7, t),
}


def corrupt(params: GeneratorParameters, family: str) -> list:
  """Coefficients of the general symmetry with one family-specific defect."""
  slot, extra = _CORRUPTIONS[family]
  coeffs = list(general_xi_eta(params))
  coeffs[slot] = coeffs[slot] + extra
  return coeffs


# invariance ---------------------------------------------------------------

@dataclass
class InvarianceResult:
  invariant: bool
  witness: list = field(default_factory=list)

  def __bool__(self) -> bool:
    return self.invariant


def _reduce(expr: Polynomial, subs_num: dict, subs_poly: dict) -> Polynomial:
  """Replace time derivatives by their values on the solution manifold.

  ``subs_poly`` maps a jet index to a polynomial value. ``subs_num`` maps a
  jet index to a numerator N with value N/q; the result is multiplied by the
  smallest power of q that clears every denominator.
  """
  expr = expr.subs(subs_poly) if subs_poly else expr
  ks = list(subs_num)
  deg = 0
  for mono, _ in expr.items():
    deg = max(deg, sum(mono[k] for k in ks))
  qk = BASE.index("q")
  out = Polynomial.zero()
  cache: dict = {}
  for mono, c in expr.items():
    kept = list(mono)
    term = Polynomial.const(c)
    e_tot = 0
    for k in ks:
      e = mono[k]
      if e:
        kept[k] = 0
        e_tot += e
        if (k, e) not in cache:
          cache[(k, e)] = subs_num[k] ** e
        term = term * cache[(k, e)]
    kept[qk] += deg - e_tot
    out = out + term * Polynomial({tuple(kept): 1})
  return out


def _manifold_substitution(gam: Polynomial):
  from .core import var_index
  div = J["u_x"] + J["v_y"] + J["w_z"]
  num = {}
  for d, dp in (("u", "p_x"), ("v", "p_y"), ("w", "p_z")):
    adv = u * J[f"{d}_x"] + v * J[f"{d}_y"] + w * J[f"{d}_z"]
    num[var_index(f"{d}_t")] = -(q * adv) - J[dp]
  poly = {
      var_index("q_t"): -(q * div) - u * J["q_x"] - v * J["q_y"] - w * J["q_z"],
      var_index("p_t"): -(gam * p * div) - u * J["p_x"] - v * J["p_y"] - w * J["p_z"],
  }
  return num, poly


def infinitesimal_invariance(X: VectorField, system: EulerSystem | None = None,
                             symbolic_gamma: bool = True) -> InvarianceResult:
  """Check that pr X annihilates the system on its solution manifold.

  With ``symbolic_gamma`` the adiabatic index stays an indeterminate, so a
  positive answer holds for every gamma at once. Points with q = 0 are
  excluded because the reduction multiplies through by powers of q.
  """
  gam = G if symbolic_gamma else Polynomial.const((system or EulerSystem()).rational_gamma())
  res = symbolic_residual(system or EulerSystem(), symbolic_gamma=symbolic_gamma)
  if not symbolic_gamma:
    res = SymbolicResidual(tuple(e.subs({"gamma": gam}) for e in res.equations))
  pr = prolong1(X)
  num, poly = _manifold_substitution(gam)
  witness = []
  for expr in res.equations:
    reduced = _reduce(pr.apply(expr), num, poly)
    witness.append(reduced)
  return InvarianceResult(all(r.is_zero() for r in witness), witness)


# errata -------------------------------------------------------------------

def errata() -> list:
  """Printed forms that were corrected, with the evidence for each change."""
  return [
      {
          "location": "generator X9, last term",
          "printed": "-2r d_r",
          "implemented": "-2q d_q",
          "evidence": "the scaling group g9 multiplies q by exp(-2s); r is not a coordinate",
      },
      {
          "location": "eta_v (coefficient of d_v), a4 w term",
          "printed": "a4 w",
          "implemented": "a9 w",
          "evidence": "the a9 z term of xi3 belongs to -X11, whose d_v part is +w",
      },
      {
          "location": "eta_u (coefficient of d_u), a6 w term",
          "printed": "-a6 w",
          "implemented": "+a6 w",
          "evidence": "the a6 terms of xi2 and xi4 belong to -X12, whose d_u part is +w; "
                      "the eta_u determining equation gives -w xi4_x = +a6 w",
      },
      {
          "location": "density and pressure coefficients",
          "printed": "eta4 = (2a1 - 2a4 + a13) q, eta5 = a13 p",
          "implemented": "d_q coefficient (2a1 - 2a4 + a13) q, d_p coefficient a13 p",
          "evidence": "X8 carries 2q d_q and X13 = q d_q + p d_p; the printed labels swap p and q",
      },
      {
          "location": "determining equations for xi",
          "printed": "xi2_x = 0, xi3_y = 0, xi4_z = 0, xi3_x = xi2_y",
          "implemented": "xi2_x = xi3_y = xi4_z, xi3_x = -xi2_y",
          "evidence": "the general solution contains the dilation a4 (x, y, z) and the rotation "
                      "a5 (y, -x); the printed forms reject both",
      },
      {
          "location": "determining equations for eta",
          "printed": "eta1 = -u xi1_t + ..., eta4 = q eta5/p + 2q xi1_t",
          "implemented": "eta_u = u(xi2_x - xi1_t) + ..., eta_q = q eta_p/p + 2q(xi1_t - xi2_x)",
          "evidence": "without the xi2_x terms the dilation X9 is not a solution, "
                      "while X9 passes the invariance check",
      },
      {
          "location": "second momentum equation, first copy of the jet-space system",
          "printed": "v w_z",
          "implemented": "w v_z",
          "evidence": "the duplicate listing and the original system both read w v_z",
      },
      {
          "location": "composite transformation, y component",
          "printed": "(c2 s)",
          "implemented": "c2^s",
          "evidence": "every sibling coordinate carries the factor c2^s",
      },
      {
          "location": "composite transformation, velocity matrix",
          "printed": "velocity coefficients not orthogonal (rows of U, V, W weights)",
          "implemented": "(c1/c2)^s times the transpose of the coordinate rotation",
          "evidence": "the coordinate matrix is orthogonal but the printed velocity matrix is not; "
                      "a rotated solution needs the inverse rotation on velocities",
      },
      {
          "location": "optimal system, hypotheses of case 19",
          "printed": "a6 != 0 together with a6 = 0",
          "implemented": "a6 = 0 kept, a6 != 0 dropped",
          "evidence": "the printed hypotheses are contradictory; the canonical form has no X6",
      },
  ]
