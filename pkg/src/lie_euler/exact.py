"""Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def to_fractions(m: Sequence[Sequence]) -> Matrix:
  return [[Fraction(c) for c in row] for row in m]


def rref(m: Sequence[Sequence]) -> tuple:
  """Reduced row echelon form and the list of pivot columns."""
  a = to_fractions(m)
  rows = len(a)
  cols = len(a[0]) if rows else 0
  pivots = []
  r = 0
  for c in range(cols):
    if r == rows:
      break
    k = next((i for i in range(r, rows) if a[i][c]), None)
    if k is None:
      continue
    a[r], a[k] = a[k], a[r]
    piv = a[r][c]
    a[r] = [e / piv for e in a[r]]
    for i in range(rows):
      if i != r and a[i][c]:
        f = a[i][c]
        a[i] = [e - f * g for e, g in zip(a[i], a[r])]
    pivots.append(c)
    r += 1
  return a, pivots


def rank(m: Sequence[Sequence]) -> int:
  if not m:
    return 0
  return len(rref(m)[1])


def row_basis(vectors: Sequence[Sequence], dim: int) -> list:
  """Canonical (reduced echelon) basis of the span of ``vectors``."""
  if not vectors:
    return []
  a, piv = rref(vectors)
  return [a[i] for i in range(len(piv))]


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list:
  """Basis of {x : m x = 0}."""
  if not m:
    n = ncols or 0
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
  a, piv = rref(m)
  n = len(a[0])
  free = [c for c in range(n) if c not in piv]
  basis = []
  for f in free:
    vec = [Fraction(0)] * n
    vec[f] = Fraction(1)
    for r, c in enumerate(piv):
      vec[c] = -a[r][f]
    basis.append(vec)
  return basis


def solve_in_span(basis: Sequence[Sequence], target: Sequence) -> list | None:
  """Coordinates of ``target`` in the span of ``basis`` rows, or None."""
  n = len(basis)
  if n == 0:
    return [] if not any(target) else None
  aug = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])]
         for i in range(len(target))]
  a, piv = rref(aug)
  if n in piv:
    return None
  coords = [Fraction(0)] * n
  for r, c in enumerate(piv):
    coords[c] = a[r][n]
  return coords


class SpanSolver:
  """Coordinates in the span of fixed independent rows, factored once."""

  def __init__(self, basis: Sequence[Sequence]):
    self.basis = to_fractions(basis)
    n = len(self.basis)
    _, piv = rref(self.basis)
    if len(piv) != n:
      raise ValueError("basis rows are linearly dependent")
    self.keys = piv
    sub = [[row[k] for k in piv] for row in self.basis]
    aug, _ = rref([row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(sub)])
    self.inverse = [row[n:] for row in aug]

  def solve(self, target: Sequence) -> list | None:
    t = [Fraction(target[k]) for k in self.keys]
    n = len(self.basis)
    x = [sum(t[r] * self.inverse[r][c] for r in range(n) if t[r]) for c in range(n)]
    width = len(self.basis[0]) if n else 0
    for k in range(width):
      if sum(x[i] * self.basis[i][k] for i in range(n) if x[i]) != target[k]:
        return None
    return [Fraction(v) for v in x]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
  bt = list(zip(*b))
  return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
  return [list(r) for r in zip(*a)]


def det(m: Sequence[Sequence]) -> Fraction:
  a = to_fractions(m)
  n = len(a)
  out = Fraction(1)
  for c in range(n):
    k = next((i for i in range(c, n) if a[i][c]), None)
    if k is None:
      return Fraction(0)
    if k != c:
      a[c], a[k] = a[k], a[c]
      out = -out
    out *= a[c][c]
    for i in range(c + 1, n):
      f = a[i][c] / a[c][c]
      if f:
        a[i] = [e - f * g for e, g in zip(a[i], a[c])]
  return out


def is_negative_definite(m: Sequence[Sequence]) -> bool:
  """Sylvester's criterion: leading minors alternate in sign, starting negative."""
  n = len(m)
  for k in range(1, n + 1):
    d = det([row[:k] for row in m[:k]])
    if (d < 0) != (k % 2 == 1) or d == 0:
      return False
  return True
