"""Exact polynomial vector fields on the base space and first jet space.

Coordinates are fixed in the order ``t, x, y, z, u, v, w, p, q`` followed by
the 20 first-order jet symbols ``u_t, u_x, ..., q_z`` and one extra
indeterminate ``gamma`` used to keep the adiabatic index symbolic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "BASE",
    "INDEPENDENT",
    "DEPENDENT",
    "JET",
    "GAMMA",
    "VARIABLES",
    "NVARS",
    "var_index",
    "jet_index",
    "Polynomial",
    "VectorField",
    "ProlongedField",
    "bracket",
    "evaluate",
    "prolong1",
    "lie_derivative",
    "total_derivative",
]

BASE = ("t", "x", "y", "z", "u", "v", "w", "p", "q")
INDEPENDENT = BASE[:4]
DEPENDENT = BASE[4:]
JET = tuple(f"{d}_{i}" for d in DEPENDENT for i in INDEPENDENT)
GAMMA = "gamma"
VARIABLES = BASE + JET + (GAMMA,)
NVARS = len(VARIABLES)

_INDEX = {name: k for k, name in enumerate(VARIABLES)}

Scalar = Union[int, Fraction]
Monomial = tuple


def var_index(name: str) -> int:
  return _INDEX[name]


def jet_index(dependent: str, independent: str) -> int:
  """Global variable index of the jet symbol ``dependent_independent``."""
  return _INDEX[f"{dependent}_{independent}"]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
  return tuple(i + j for i, j in zip(a, b))


_ZERO_MONO = (0,) * NVARS


class Polynomial:
  """Sparse polynomial with exact rational coefficients.

  Instances are treated as immutable; every operation returns a new object.
  """

  __slots__ = ("_terms", "_hash")

  def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
    clean = {}
    if terms:
      for mono, c in terms.items():
        if len(mono) != NVARS:
          raise ValueError("exponent vector has wrong length")
        if any(e < 0 for e in mono):
          raise ValueError("negative exponent")
        c = Fraction(c)
        if c:
          clean[tuple(mono)] = c
    self._terms = clean
    self._hash = None

  # constructors
  @classmethod
  def _raw(cls, terms: dict) -> "Polynomial":
    obj = cls.__new__(cls)
    obj._terms = terms
    obj._hash = None
    return obj

  @classmethod
  def const(cls, c: Scalar) -> "Polynomial":
    return cls({_ZERO_MONO: c})

  @classmethod
  def var(cls, name: str | int) -> "Polynomial":
    k = name if isinstance(name, int) else _INDEX[name]
    mono = [0] * NVARS
    mono[k] = 1
    return cls._raw({tuple(mono): Fraction(1)})

  @classmethod
  def zero(cls) -> "Polynomial":
    return cls._raw({})

  @staticmethod
  def _coerce(other) -> "Polynomial":
    if isinstance(other, Polynomial):
      return other
    if isinstance(other, (int, Fraction)):
      return Polynomial.const(other)
    return NotImplemented

  @property
  def terms(self) -> dict:
    return dict(self._terms)

  def items(self):
    return self._terms.items()

  def is_zero(self) -> bool:
    return not self._terms

  def __bool__(self) -> bool:
    return bool(self._terms)

  def __len__(self) -> int:
    return len(self._terms)

  def __eq__(self, other) -> bool:
    other = Polynomial._coerce(other)
    if other is NotImplemented:
      return NotImplemented
    return self._terms == other._terms

  def __hash__(self) -> int:
    if self._hash is None:
      self._hash = hash(frozenset(self._terms.items()))
    return self._hash

  # arithmetic
  def __add__(self, other) -> "Polynomial":
    other = Polynomial._coerce(other)
    if other is NotImplemented:
      return NotImplemented
    out = dict(self._terms)
    for mono, c in other._terms.items():
      s = out.get(mono, 0) + c
      if s:
        out[mono] = s
      else:
        out.pop(mono, None)
    return Polynomial._raw(out)

  __radd__ = __add__

  def __neg__(self) -> "Polynomial":
    return Polynomial._raw({m: -c for m, c in self._terms.items()})

  def __sub__(self, other) -> "Polynomial":
    other = Polynomial._coerce(other)
    if other is NotImplemented:
      return NotImplemented
    return self + (-other)

  def __rsub__(self, other) -> "Polynomial":
    return Polynomial._coerce(other) - self

  def __mul__(self, other) -> "Polynomial":
    if isinstance(other, (int, Fraction)):
      if not other:
        return Polynomial.zero()
      return Polynomial._raw({m: c * other for m, c in self._terms.items()})
    other = Polynomial._coerce(other)
    if other is NotImplemented:
      return NotImplemented
    out: dict = {}
    for m1, c1 in self._terms.items():
      for m2, c2 in other._terms.items():
        m = _mono_mul(m1, m2)
        s = out.get(m, 0) + c1 * c2
        if s:
          out[m] = s
        else:
          out.pop(m, None)
    return Polynomial._raw(out)

  __rmul__ = __mul__

  def __pow__(self, n: int) -> "Polynomial":
    if n < 0:
      raise ValueError("negative power")
    out = Polynomial.const(1)
    base = self
    while n:
      if n & 1:
        out = out * base
      base = base * base
      n >>= 1
    return out

  # calculus and substitution
  def diff(self, name: str | int) -> "Polynomial":
    k = name if isinstance(name, int) else _INDEX[name]
    out = {}
    for mono, c in self._terms.items():
      e = mono[k]
      if e:
        m = list(mono)
        m[k] = e - 1
        out[tuple(m)] = c * e
    return Polynomial._raw(out)

  def subs(self, mapping: Mapping[str | int, "Polynomial"]) -> "Polynomial":
    """Substitute polynomials for variables, all at once."""
    repl = {(k if isinstance(k, int) else _INDEX[k]): Polynomial._coerce(v)
            for k, v in mapping.items()}
    out = Polynomial.zero()
    powers: dict = {}
    for mono, c in self._terms.items():
      kept = list(mono)
      term = Polynomial.const(c)
      for k, p in repl.items():
        e = mono[k]
        if e:
          kept[k] = 0
          key = (k, e)
          if key not in powers:
            powers[key] = p ** e
          term = term * powers[key]
      out = out + term * Polynomial._raw({tuple(kept): Fraction(1)})
    return out

  def evaluate(self, values: Mapping[str, float] | Sequence[float]):
    """Evaluate at a point; missing named variables count as zero."""
    if isinstance(values, Mapping):
      vec = [0] * NVARS
      for k, v in values.items():
        vec[_INDEX[k]] = v
    else:
      vec = list(values) + [0] * (NVARS - len(values))
    total = 0
    for mono, c in self._terms.items():
      term = c
      for k, e in enumerate(mono):
        if e:
          term = term * vec[k] ** e
      total = total + term
    return total

  def variables(self) -> set:
    used = set()
    for mono in self._terms:
      used.update(k for k, e in enumerate(mono) if e)
    return {VARIABLES[k] for k in used}

  def degree(self, names: Iterable[str] | None = None) -> int:
    idx = range(NVARS) if names is None else [_INDEX[n] for n in names]
    if not self._terms:
      return -1
    return max(sum(mono[k] for k in idx) for mono in self._terms)

  def coefficient(self, mono: Mapping[str, int]) -> Fraction:
    key = [0] * NVARS
    for k, e in mono.items():
      key[_INDEX[k]] = e
    return self._terms.get(tuple(key), Fraction(0))

  def coefficient_of(self, name: str) -> "Polynomial":
    """Part of the polynomial linear in ``name``, with ``name`` stripped."""
    k = _INDEX[name]
    out = {}
    for mono, c in self._terms.items():
      if mono[k] == 1:
        m = list(mono)
        m[k] = 0
        out[tuple(m)] = c
    return Polynomial._raw(out)

  # rendering
  def sorted_terms(self):
    return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), [-e for e in kv[0]]))

  @staticmethod
  def monomial_str(mono: Monomial) -> str:
    parts = []
    for k, e in enumerate(mono):
      if e == 1:
        parts.append(VARIABLES[k])
      elif e:
        parts.append(f"{VARIABLES[k]}^{e}")
    return "*".join(parts)

  def __str__(self) -> str:
    if not self._terms:
      return "0"
    out = []
    for mono, c in self.sorted_terms():
      m = Polynomial.monomial_str(mono)
      out.append(f"{c}*{m}" if m else f"{c}")
    return " + ".join(out)

  def __repr__(self) -> str:
    return f"Polynomial({self})"


_ONE = Polynomial.const(1)


def _as_poly(c) -> Polynomial:
  return c if isinstance(c, Polynomial) else Polynomial.const(c)


class VectorField:
  """A vector field ``sum_i c_i d_i`` on the 9-dimensional base space."""

  __slots__ = ("coeffs",)

  def __init__(self, coeffs: Sequence[Polynomial] | Mapping[str, Polynomial]):
    if isinstance(coeffs, Mapping):
      vals = [Polynomial.zero()] * 9
      for k, c in coeffs.items():
        vals[BASE.index(k)] = _as_poly(c)
      coeffs = vals
    coeffs = tuple(_as_poly(c) for c in coeffs)
    if len(coeffs) != 9:
      raise ValueError("a vector field needs 9 coefficients")
    base = set(BASE)
    for c in coeffs:
      extra = c.variables() - base
      if extra:
        raise ValueError(f"coefficients must depend on base variables only, got {sorted(extra)}")
    object.__setattr__(self, "coeffs", coeffs)

  def __setattr__(self, key, value):
    raise AttributeError("VectorField is immutable")

  @classmethod
  def zero(cls) -> "VectorField":
    return cls([Polynomial.zero()] * 9)

  def __getitem__(self, name: str | int) -> Polynomial:
    k = name if isinstance(name, int) else BASE.index(name)
    return self.coeffs[k]

  def __eq__(self, other) -> bool:
    if not isinstance(other, VectorField):
      return NotImplemented
    return self.coeffs == other.coeffs

  def __hash__(self) -> int:
    return hash(self.coeffs)

  def __add__(self, other: "VectorField") -> "VectorField":
    return VectorField([a + b for a, b in zip(self.coeffs, other.coeffs)])

  def __sub__(self, other: "VectorField") -> "VectorField":
    return VectorField([a - b for a, b in zip(self.coeffs, other.coeffs)])

  def __neg__(self) -> "VectorField":
    return VectorField([-a for a in self.coeffs])

  def __mul__(self, c) -> "VectorField":
    return VectorField([a * c for a in self.coeffs])

  __rmul__ = __mul__

  def is_zero(self) -> bool:
    return all(c.is_zero() for c in self.coeffs)

  def apply(self, f: Polynomial) -> Polynomial:
    """Directional derivative of a base-variable polynomial."""
    out = Polynomial.zero()
    for k, c in enumerate(self.coeffs):
      if c:
        d = f.diff(k)
        if d:
          out = out + c * d
    return out

  def to_text(self) -> str:
    parts = []
    for k, c in enumerate(self.coeffs):
      for mono, coef in c.sorted_terms():
        m = Polynomial.monomial_str(mono)
        lead = f"{coef}*{m}" if m else f"{coef}"
        parts.append(f"{lead} ∂_{BASE[k]}")
    return " + ".join(parts) if parts else "0"

  @classmethod
  def from_text(cls, text: str) -> "VectorField":
    text = text.strip()
    coeffs = [Polynomial.zero()] * 9
    if text == "0":
      return cls(coeffs)
    for chunk in text.split(" + "):
      m = re.fullmatch(r"(-?\d+(?:/\d+)?)(?:\*(\S+))? ∂_(\w)", chunk.strip())
      if not m:
        raise ValueError(f"cannot parse term {chunk!r}")
      coef, mono_s, target = m.groups()
      mono = [0] * NVARS
      if mono_s:
        for factor in mono_s.split("*"):
          name, _, e = factor.partition("^")
          mono[_INDEX[name]] += int(e) if e else 1
      k = BASE.index(target)
      coeffs[k] = coeffs[k] + Polynomial({tuple(mono): Fraction(coef)})
    return cls(coeffs)

  def to_json(self) -> dict:
    out = {}
    for k, c in enumerate(self.coeffs):
      if c:
        out[BASE[k]] = [[str(coef), list(mono[:9])] for mono, coef in c.sorted_terms()]
    return out

  @classmethod
  def from_json(cls, data: Mapping[str, list]) -> "VectorField":
    coeffs = [Polynomial.zero()] * 9
    for target, entries in data.items():
      terms = {}
      for coef, expo in entries:
        terms[tuple(expo) + (0,) * (NVARS - len(expo))] = Fraction(coef)
      coeffs[BASE.index(target)] = Polynomial(terms)
    return cls(coeffs)

  def __str__(self) -> str:
    return self.to_text()

  def __repr__(self) -> str:
    return f"VectorField({self.to_text()})"


class ProlongedField:
  """A base field together with its 20 first-order jet coefficients."""

  __slots__ = ("base", "jet_coeffs")

  def __init__(self, base: VectorField, jet_coeffs: Sequence[Polynomial]):
    if len(jet_coeffs) != len(JET):
      raise ValueError("expected 20 jet coefficients")
    object.__setattr__(self, "base", base)
    object.__setattr__(self, "jet_coeffs", tuple(jet_coeffs))

  def __setattr__(self, key, value):
    raise AttributeError("ProlongedField is immutable")

  def jet(self, dependent: str, independent: str) -> Polynomial:
    return self.jet_coeffs[JET.index(f"{dependent}_{independent}")]

  def is_consistent(self) -> bool:
    return prolong1(self.base).jet_coeffs == self.jet_coeffs

  def apply(self, f: Polynomial) -> Polynomial:
    out = self.base.apply(f)
    for k, c in enumerate(self.jet_coeffs):
      if c:
        d = f.diff(9 + k)
        if d:
          out = out + c * d
    return out


def bracket(X: VectorField, Y: VectorField) -> VectorField:
  """Lie bracket ``[X, Y] = XY - YX``."""
  return VectorField([X.apply(b) - Y.apply(a) for a, b in zip(X.coeffs, Y.coeffs)])


def evaluate(X: VectorField, point: Sequence[float]) -> list:
  """Components of ``X`` at a 9-vector point, as floats."""
  return [float(c.evaluate(point)) for c in X.coeffs]


_JET_VARS = {(d, i): Polynomial.var(f"{d}_{i}") for d in DEPENDENT for i in INDEPENDENT}


def total_derivative(f: Polynomial, independent: str) -> Polynomial:
  """Total derivative of a base-variable polynomial."""
  out = f.diff(independent)
  for d in DEPENDENT:
    df = f.diff(d)
    if df:
      out = out + df * _JET_VARS[(d, independent)]
  return out


def prolong1(X: VectorField) -> ProlongedField:
  xi = X.coeffs[:4]
  eta = X.coeffs[4:]
  jets = []
  for j, d in enumerate(DEPENDENT):
    for k in INDEPENDENT:
      phi = total_derivative(eta[j], k)
      for i, ind in enumerate(INDEPENDENT):
        dxi = total_derivative(xi[i], k)
        if dxi:
          phi = phi - dxi * _JET_VARS[(d, ind)]
      jets.append(phi)
  return ProlongedField(X, jets)


def lie_derivative(X: VectorField | ProlongedField, f: Polynomial) -> Polynomial:
  """Action of ``X`` on ``f``, prolonging when ``f`` involves jet symbols."""
  if isinstance(X, ProlongedField):
    return X.apply(f)
  if f.variables() & set(JET):
    return prolong1(X).apply(f)
  return X.apply(f)
