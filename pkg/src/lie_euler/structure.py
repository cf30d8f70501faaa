"""Structure constants and exact Lie algebra analysis."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .core import NVARS, VectorField, bracket

__all__ = [
    "StructureError",
    "StructureConstants",
    "Subalgebra",
    "DecompositionReport",
    "structure_constants_from_fields",
    "symmetry_algebra",
    "quotient_algebra",
    "center",
    "quotient",
    "derived_subalgebra",
    "derived_series",
    "is_solvable",
    "is_ideal",
    "killing_form",
    "restricted_form",
    "levi_verify",
    "so3_identification",
    "galilean_check",
    "complement_check",
    "radical_structure_checks",
    "span",
    "so3",
    "heisenberg",
    "abelian",
]


class StructureError(ValueError):
  pass


def _unit(n: int, i: int) -> list:
  return [Fraction(int(k == i)) for k in range(n)]


class StructureConstants:
  """Sparse c^k_ij with [e_i, e_j] = sum_k c^k_ij e_k (0-indexed)."""

  def __init__(self, dim: int, c: dict, label: str = "e", check: bool = True):
    self.dim = dim
    self.label = label
    table: dict = {}
    for (i, j, k), val in c.items():
      val = Fraction(val)
      if val:
        table[(i, j, k)] = val
    self.c = table
    self._rows = {}
    for (i, j, k), val in table.items():
      self._rows.setdefault((i, j), {})[k] = val
    if check:
      bad = self.antisymmetry_violations()
      if bad:
        raise StructureError(f"structure constants not antisymmetric at {bad[0]}")
      bad = self.jacobi_violations(first_only=True)
      if bad:
        raise StructureError(f"Jacobi identity fails for {bad[0]}")

  def bracket_basis(self, i: int, j: int) -> list:
    vec = [Fraction(0)] * self.dim
    for k, val in self._rows.get((i, j), {}).items():
      vec[k] = val
    return vec

  def bracket(self, a: Sequence, b: Sequence) -> list:
    out = [Fraction(0) if isinstance(a[0], (int, Fraction)) else 0.0] * self.dim
    out = list(out)
    for (i, j), row in self._rows.items():
      ai, bj = a[i], b[j]
      if ai and bj:
        f = ai * bj
        for k, val in row.items():
          out[k] += f * val
    return out

  def ad(self, a: Sequence) -> list:
    """Matrix of y -> [a, y]; column j is the image of e_j."""
    cols = [self.bracket(a, _unit(self.dim, j)) for j in range(self.dim)]
    return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

  def antisymmetry_violations(self) -> list:
    bad = []
    for i in range(self.dim):
      for j in range(self.dim):
        a = self.bracket_basis(i, j)
        b = self.bracket_basis(j, i)
        if any(x + y for x, y in zip(a, b)):
          bad.append((i, j))
    return bad

  def jacobi_violations(self, first_only: bool = False) -> list:
    bad = []
    n = self.dim
    for i, j, k in itertools.combinations(range(n), 3):
      ei, ej, ek = _unit(n, i), _unit(n, j), _unit(n, k)
      s = [a + b + c for a, b, c in zip(
          self.bracket(ei, self.bracket(ej, ek)),
          self.bracket(ej, self.bracket(ek, ei)),
          self.bracket(ek, self.bracket(ei, ej)))]
      if any(s):
        bad.append((i, j, k))
        if first_only:
          break
    return bad

  def jacobi_triple_count(self) -> int:
    n = self.dim
    return n * (n - 1) * (n - 2) // 6

  def whole(self) -> "Subalgebra":
    return Subalgebra(self, [_unit(self.dim, i) for i in range(self.dim)])

  def name(self, i: int) -> str:
    return f"{self.label}{i + 1}"

  def format_vector(self, vec: Sequence) -> str:
    parts = []
    for k, c in enumerate(vec):
      if not c:
        continue
      name = self.name(k)
      if c == 1:
        parts.append(name)
      elif c == -1:
        parts.append(f"-{name}")
      else:
        parts.append(f"{c}*{name}")
    if not parts:
      return "0"
    out = parts[0]
    for s in parts[1:]:
      out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out

  def table(self) -> list:
    return [[self.format_vector(self.bracket_basis(i, j)) for j in range(self.dim)]
            for i in range(self.dim)]

  def render_markdown(self) -> str:
    names = [self.name(i) for i in range(self.dim)]
    lines = ["| [ , ] | " + " | ".join(names) + " |",
             "|" + "---|" * (self.dim + 1)]
    for i, row in enumerate(self.table()):
      lines.append(f"| {names[i]} | " + " | ".join(row) + " |")
    return "\n".join(lines)

  def to_json(self) -> dict:
    triples = [[i + 1, j + 1, k + 1, str(v)] for (i, j, k), v in sorted(self.c.items())]
    return {"dim": self.dim, "label": self.label, "structure_constants": triples}

  def __eq__(self, other) -> bool:
    if not isinstance(other, StructureConstants):
      return NotImplemented
    return self.dim == other.dim and self.c == other.c


@dataclass
class Subalgebra:
  parent: StructureConstants
  basis: list
  closed: bool = field(default=False)

  def __post_init__(self):
    self.basis = [[Fraction(c) for c in b] for b in self.basis]
    if exact.rank(self.basis) != len(self.basis) if self.basis else False:
      raise StructureError("basis vectors are linearly dependent")
    self.closed = self.check_closed()

  @property
  def dim(self) -> int:
    return len(self.basis)

  def contains(self, vec: Sequence) -> bool:
    return exact.solve_in_span(self.basis, vec) is not None

  def coords(self, vec: Sequence) -> list | None:
    return exact.solve_in_span(self.basis, vec)

  def check_closed(self) -> bool:
    for a, b in itertools.combinations(self.basis, 2):
      if not self.contains(self.parent.bracket(a, b)):
        return False
    return True

  def structure_constants(self, label: str | None = None) -> StructureConstants:
    if not self.closed:
      raise StructureError("subspace is not closed under the bracket")
    c = {}
    for i, a in enumerate(self.basis):
      for j, b in enumerate(self.basis):
        co = self.coords(self.parent.bracket(a, b))
        for k, val in enumerate(co):
          if val:
            c[(i, j, k)] = val
    return StructureConstants(self.dim, c, label or self.parent.label)

  def canonical(self) -> list:
    return exact.row_basis(self.basis, self.parent.dim)

  def same_space(self, other: "Subalgebra") -> bool:
    return self.dim == other.dim and all(self.contains(b) for b in other.basis)

  def support_labels(self) -> list:
    """Parent basis labels, when the subspace is spanned by parent basis vectors."""
    labels = []
    for b in self.canonical():
      nz = [k for k, c in enumerate(b) if c]
      if len(nz) != 1:
        return []
      labels.append(self.parent.name(nz[0]))
    return labels

  def killing_form(self) -> list:
    return killing_form(self.structure_constants())


def span(parent: StructureConstants, indices: Iterable[int]) -> Subalgebra:
  """Subspace spanned by parent basis elements (1-indexed)."""
  return Subalgebra(parent, [_unit(parent.dim, i - 1) for i in indices])


# construction ---------------------------------------------------------------

def _flatten(X: VectorField) -> dict:
  out = {}
  for slot, poly in enumerate(X.coeffs):
    for mono, c in poly.items():
      out[(slot, mono)] = c
  return out


def structure_constants_from_fields(gens: Sequence[VectorField], label: str = "X") -> StructureConstants:
  flat = [_flatten(g) for g in gens]
  keys = sorted({k for f in flat for k in f})
  basis = [[f.get(k, Fraction(0)) for k in keys] for f in flat]
  try:
    solver = exact.SpanSolver(basis)
  except ValueError:
    raise StructureError("generators are linearly dependent") from None
  c = {}
  for i, gi in enumerate(gens):
    for j in range(i + 1, len(gens)):
      br = _flatten(bracket(gi, gens[j]))
      if set(br) - set(keys):
        raise StructureError(f"not closed: [{label}{i + 1},{label}{j + 1}] leaves the span")
      co = solver.solve([br.get(k, Fraction(0)) for k in keys])
      if co is None:
        raise StructureError(f"not closed: [{label}{i + 1},{label}{j + 1}] leaves the span")
      for k, val in enumerate(co):
        if val:
          c[(i, j, k)] = val
          c[(j, i, k)] = -val
  return StructureConstants(len(gens), c, label)


def symmetry_algebra() -> StructureConstants:
  from .generators import standard_generators
  return structure_constants_from_fields(standard_generators(), "X")


def quotient_algebra() -> StructureConstants:
  g = symmetry_algebra()
  return quotient(g, center(g), label="Y")


# analysis -------------------------------------------------------------------

def center(sc: StructureConstants) -> Subalgebra:
  rows = []
  n = sc.dim
  # x is central iff [x, e_j] = 0 for all j: a linear condition on x
  for j in range(n):
    ej = _unit(n, j)
    cols = [sc.bracket(_unit(n, i), ej) for i in range(n)]
    for k in range(n):
      rows.append([cols[i][k] for i in range(n)])
  return Subalgebra(sc, exact.nullspace(rows, n))


def is_ideal(s: Subalgebra, in_: Subalgebra | None = None) -> bool:
  outer = in_ if in_ is not None else s.parent.whole()
  for b in outer.basis:
    for a in s.basis:
      if not s.contains(s.parent.bracket(b, a)):
        return False
  return True


def quotient(sc: StructureConstants, ideal: Subalgebra, label: str | None = None) -> StructureConstants:
  """Quotient by an ideal, using parent basis vectors outside its pivots."""
  if not is_ideal(ideal):
    raise StructureError("not an ideal")
  if ideal.dim == 0:
    return StructureConstants(sc.dim, dict(sc.c), label or sc.label)
  canon = ideal.canonical()
  pivots = [next(k for k, c in enumerate(b) if c) for b in canon]
  keep = [k for k in range(sc.dim) if k not in pivots]
  pos = {k: n for n, k in enumerate(keep)}

  def reduce(vec):
    vec = list(vec)
    for b, pv in zip(canon, pivots):
      if vec[pv]:
        f = vec[pv]
        vec = [x - f * y for x, y in zip(vec, b)]
    return vec

  c = {}
  for i, j in itertools.product(keep, repeat=2):
    vec = reduce(sc.bracket_basis(i, j))
    for k, val in enumerate(vec):
      if val:
        c[(pos[i], pos[j], pos[k])] = val
  return StructureConstants(len(keep), c, label or sc.label)


def derived_subalgebra(s: Subalgebra) -> Subalgebra:
  vecs = [s.parent.bracket(a, b) for a, b in itertools.combinations(s.basis, 2)]
  vecs = [v for v in vecs if any(v)]
  return Subalgebra(s.parent, exact.row_basis(vecs, s.parent.dim))


def derived_series(s: Subalgebra) -> list:
  """s, s^(1), ... until the series reaches zero or stabilizes."""
  if not s.closed:
    raise StructureError("subspace is not closed under the bracket")
  series = [s]
  while series[-1].dim:
    nxt = derived_subalgebra(series[-1])
    if nxt.dim == series[-1].dim:
      break
    series.append(nxt)
  return series


def is_solvable(s: Subalgebra) -> bool:
  return derived_series(s)[-1].dim == 0


def killing_form(sc: StructureConstants) -> list:
  n = sc.dim
  ads = [sc.ad(_unit(n, i)) for i in range(n)]
  return [[sum(ads[i][r][c] * ads[j][c][r] for r in range(n) for c in range(n))
           for j in range(n)] for i in range(n)]


def restricted_form(form: Sequence[Sequence], basis: Sequence[Sequence]) -> list:
  return [[sum(a[r] * form[r][c] * b[c] for r in range(len(a)) for c in range(len(b)))
           for b in basis] for a in basis]


@dataclass
class DecompositionReport:
  center_dim: int
  derived_series_dims: list
  radical_basis: list
  levi_basis: list
  flags: dict
  failures: list = field(default_factory=list)

  @property
  def ok(self) -> bool:
    return not self.failures

  def to_json(self) -> dict:
    return {
        "center_dim": self.center_dim,
        "derived_series_dims": self.derived_series_dims,
        "radical_basis": self.radical_basis,
        "levi_basis": self.levi_basis,
        "flags": self.flags,
        "failures": self.failures,
    }


def _labels(s: Subalgebra) -> list:
  return s.support_labels() or [[str(c) for c in b] for b in s.basis]


def levi_verify(sc: StructureConstants, radical: Subalgebra, levi: Subalgebra) -> DecompositionReport:
  failures = []
  flags = {}
  flags["direct_sum"] = (radical.dim + levi.dim == sc.dim
                         and exact.rank(radical.basis + levi.basis) == sc.dim)
  if not flags["direct_sum"]:
    failures.append("direct sum")
  flags["radical_ideal"] = radical.closed and is_ideal(radical)
  if not flags["radical_ideal"]:
    failures.append("radical ideal")
  flags["radical_solvable"] = radical.closed and is_solvable(radical)
  if not flags["radical_solvable"]:
    failures.append("radical solvable")
  maximal = True
  if flags["radical_ideal"] and flags["radical_solvable"]:
    for k in range(sc.dim):
      e = _unit(sc.dim, k)
      if radical.contains(e):
        continue
      ext = Subalgebra(sc, radical.basis + [e])
      if ext.closed and is_ideal(ext) and is_solvable(ext):
        maximal = False
        break
  else:
    maximal = False
  flags["radical_maximal"] = maximal
  if not maximal:
    failures.append("radical maximal")
  flags["levi_closed"] = levi.closed
  if not levi.closed:
    failures.append("levi closed")
  semisimple = levi.closed and levi.dim > 0 and exact.det(levi.killing_form()) != 0
  flags["levi_semisimple"] = semisimple
  if not semisimple:
    failures.append("levi semisimple")
  series = derived_series(radical) if radical.closed else []
  return DecompositionReport(
      center_dim=center(sc).dim,
      derived_series_dims=[s.dim for s in series],
      radical_basis=_labels(radical),
      levi_basis=_labels(levi),
      flags=flags,
      failures=failures,
  )


def so3_identification(s: Subalgebra) -> list | None:
  """Signed permutation Z_i = e_i * b_sigma(i) with so(3) brackets, or None.

  Rows of the returned 3x3 matrix are the Z_i in the basis of ``s``.
  """
  if s.dim != 3 or not s.closed:
    return None
  sc = s.structure_constants()
  if not exact.is_negative_definite(killing_form(sc)):
    return None
  for perm in itertools.permutations(range(3)):
    for signs in itertools.product((-1, 1), repeat=3):
      z = [[Fraction(signs[i]) if k == perm[i] else Fraction(0) for k in range(3)]
           for i in range(3)]
      if all(sc.bracket(z[a], z[b]) == z[c] for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1))):
        return z
  return None


@dataclass
class CheckResult:
  ok: bool
  detail: str = ""

  def __bool__(self) -> bool:
    return self.ok


def galilean_check(b: Subalgebra) -> CheckResult:
  """Bracket pattern of gal(3) for a basis ordered as
  (T1, T2, T3, H, K1, K2, K3, R1, R2, R3): translations, time translation,
  boosts, rotations."""
  if b.dim != 10:
    return CheckResult(False, "dimension is not 10")
  sc = b.parent
  T, H, K, R = b.basis[0:3], b.basis[3], b.basis[4:7], b.basis[7:10]
  zero = [Fraction(0)] * sc.dim
  rspan = Subalgebra(sc, R)

  def br(a, c):
    return sc.bracket(a, c)

  for group, name in ((T, "T"), (K, "K")):
    for i, j in itertools.combinations(range(3), 2):
      if br(group[i], group[j]) != zero:
        return CheckResult(False, f"[{name}{i + 1},{name}{j + 1}] != 0")
  for i in range(3):
    if br(H, T[i]) != zero:
      return CheckResult(False, f"[H,T{i + 1}] != 0")
    if br(H, K[i]) != T[i]:
      return CheckResult(False, f"[H,K{i + 1}] != T{i + 1}")
    for j in range(3):
      if br(T[i], K[j]) != zero:
        return CheckResult(False, f"[T{i + 1},K{j + 1}] != 0")
  for a in range(3):
    if br(R[a], H) != zero:
      return CheckResult(False, f"[R{a + 1},H] != 0")
    for c in range(a + 1, 3):
      if not rspan.contains(br(R[a], R[c])):
        return CheckResult(False, f"[R{a + 1},R{c + 1}] leaves the rotations")
    mats = []
    for group, name in ((T, "T"), (K, "K")):
      gspan = Subalgebra(sc, group)
      m = []
      for j in range(3):
        co = gspan.coords(br(R[a], group[j]))
        if co is None:
          return CheckResult(False, f"[R{a + 1},{name}{j + 1}] leaves span {name}")
        m.append(co)
      mats.append(m)
    if mats[0] != mats[1]:
      return CheckResult(False, f"R{a + 1} acts differently on T and K")
    m = mats[0]
    if any(m[i][j] != -m[j][i] for i in range(3) for j in range(3)) or not any(map(any, m)):
      return CheckResult(False, f"R{a + 1} does not act as an infinitesimal rotation")
  if so3_identification(rspan) is None:
    return CheckResult(False, "rotations do not form so(3)")
  return CheckResult(True, "")


def complement_check(sc: StructureConstants) -> dict:
  """The Galilean ideal and its abelian complement span{X8, X9, X13}."""
  b = span(sc, [1, 2, 3, 4, 5, 6, 7, 10, 11, 12])
  comp = span(sc, [8, 9, 13])
  abelian_ok = all(not any(sc.bracket(a, c)) for a, c in itertools.combinations(comp.basis, 2))
  return {
      "ideal": is_ideal(b),
      "complement_abelian": abelian_ok,
      "complementary": exact.rank(b.basis + comp.basis) == sc.dim,
      "galilean": bool(galilean_check(b)),
  }


def _abelian(s: Subalgebra) -> bool:
  return all(not any(s.parent.bracket(a, c)) for a, c in itertools.combinations(s.basis, 2))


def _semidirect(ideal: Subalgebra, factor: Subalgebra, whole: Subalgebra) -> bool:
  return (is_ideal(ideal, whole) and factor.closed
          and exact.rank(ideal.basis + factor.basis) == whole.dim == ideal.dim + factor.dim)


def radical_structure_checks(sc1: StructureConstants) -> dict:
  """Bracket-level decomposition of the quotient algebra (labels Y1..Y12)."""
  r = span(sc1, range(1, 10))
  s = span(sc1, [10, 11, 12])
  r1 = span(sc1, range(1, 8))
  y89 = span(sc1, [8, 9])
  y123 = span(sc1, [1, 2, 3])
  y47 = span(sc1, [4, 5, 6, 7])
  levi = levi_verify(sc1, r, s)
  return {
      "levi": levi.ok,
      "r_derived_is_Y1..Y7": derived_subalgebra(r).same_space(r1),
      "r = r1 + span{Y8,Y9}": _semidirect(r1, y89, r),
      "span{Y8,Y9} abelian": _abelian(y89),
      "span{Y1,Y2,Y3} ideal of r1": is_ideal(y123, r1),
      "span{Y1,Y2,Y3} abelian": _abelian(y123),
      # [Y4, Y5] = Y1, so the literal complement is neither closed nor abelian;
      # the abelian statement holds for the quotient r1 / span{Y1,Y2,Y3}
      "span{Y4..Y7} closed": y47.closed,
      "span{Y4..Y7} abelian": _abelian(y47),
      "r1 / span{Y1,Y2,Y3} abelian": _abelian_quotient(r1, y123),
  }


def _abelian_quotient(outer: Subalgebra, ideal: Subalgebra) -> bool:
  return all(ideal.contains(outer.parent.bracket(a, c))
             for a, c in itertools.combinations(outer.basis, 2))


# reference algebras -----------------------------------------------------------

def abelian(n: int) -> StructureConstants:
  return StructureConstants(n, {}, "e")


def so3() -> StructureConstants:
  c = {}
  for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    c[(i, j, k)] = 1
    c[(j, i, k)] = -1
  return StructureConstants(3, c, "e")


def heisenberg() -> StructureConstants:
  return StructureConstants(3, {(0, 1, 2): 1, (1, 0, 2): -1}, "e")
