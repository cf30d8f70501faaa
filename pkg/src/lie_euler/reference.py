"""Published commutator tables, one signed basis index per cell.

Cell (i, j) holds k when [e_i, e_j] = e_k, -k for -e_k and 0 for zero.
"""

from __future__ import annotations

from fractions import Fraction

from .structure import StructureConstants

X_TABLE = (
    (  0,   0,   0,   0,   0,   0,   0,   0,   1,  -2,   0,   3,   0),
    (  0,   0,   0,   0,   0,   0,   0,   0,   2,   1,   3,   0,   0),
    (  0,   0,   0,   0,   0,   0,   0,   0,   3,   0,  -2,  -1,   0),
    (  0,   0,   0,   0,   1,   2,   3,   4,   0,   0,   0,   0,   0),
    (  0,   0,   0,  -1,   0,   0,   0,  -5,   5,  -6,   0,   7,   0),
    (  0,   0,   0,  -2,   0,   0,   0,  -6,   6,   5,   7,   0,   0),
    (  0,   0,   0,  -3,   0,   0,   0,  -7,   7,   0,  -6,  -5,   0),
    (  0,   0,   0,  -4,   5,   6,   7,   0,   0,   0,   0,   0,   0),
    ( -1,  -2,  -3,   0,  -5,  -6,  -7,   0,   0,   0,   0,   0,   0),
    (  2,  -1,   0,   0,   6,  -5,   0,   0,   0,   0, -12,  11,   0),
    (  0,  -3,   2,   0,   0,  -7,   6,   0,   0,  12,   0, -10,   0),
    ( -3,   0,   1,   0,  -7,   0,   5,   0,   0, -11,  10,   0,   0),
    (  0,   0,   0,   0,   0,   0,   0,   0,   0,   0,   0,   0,   0),
)

Y_TABLE = (
    (  0,   0,   0,   0,   0,   0,   0,   0,   1,  -2,   0,   3),
    (  0,   0,   0,   0,   0,   0,   0,   0,   2,   1,   3,   0),
    (  0,   0,   0,   0,   0,   0,   0,   0,   3,   0,  -2,  -1),
    (  0,   0,   0,   0,   1,   2,   3,   4,   0,   0,   0,   0),
    (  0,   0,   0,  -1,   0,   0,   0,  -5,   5,  -6,   0,   7),
    (  0,   0,   0,  -2,   0,   0,   0,  -6,   6,   5,   7,   0),
    (  0,   0,   0,  -3,   0,   0,   0,  -7,   7,   0,  -6,  -5),
    (  0,   0,   0,  -4,   5,   6,   7,   0,   0,   0,   0,   0),
    ( -1,  -2,  -3,   0,  -5,  -6,  -7,   0,   0,   0,   0,   0),
    (  2,  -1,   0,   0,   6,  -5,   0,   0,   0,   0, -12,  11),
    (  0,  -3,   2,   0,   0,  -7,   6,   0,   0,  12,   0, -10),
    ( -3,   0,   1,   0,  -7,   0,   5,   0,   0, -11,  10,   0),
)


def table_entry(table, i: int, j: int, dim: int) -> list:
  """Vector of cell (i, j), 1-indexed."""
  k = table[i - 1][j - 1]
  vec = [Fraction(0)] * dim
  if k:
    vec[abs(k) - 1] = Fraction(1 if k > 0 else -1)
  return vec


def compare_table(sc: StructureConstants, table) -> list:
  """Cells where the computed brackets differ from ``table`` (1-indexed)."""
  n = len(table)
  if sc.dim != n:
    return [("dim", sc.dim, n)]
  bad = []
  for i in range(1, n + 1):
    for j in range(1, n + 1):
      if sc.bracket_basis(i - 1, j - 1) != table_entry(table, i, j, n):
        bad.append((i, j))
  return bad
