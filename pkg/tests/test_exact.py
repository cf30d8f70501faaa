from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as hst

from lie_euler import exact

from strategies import small_fraction

matrices = hst.integers(1, 4).flatmap(
    lambda n: hst.lists(hst.lists(small_fraction, min_size=n, max_size=n), min_size=1, max_size=4))


def test_rref_and_rank():
  a, piv = exact.rref([[2, 4], [1, 2]])
  assert piv == [0] and a[0] == [1, 2]
  assert exact.rank([[1, 0], [0, 1]]) == 2


def test_det_and_definiteness():
  assert exact.det([[1, 2], [3, 4]]) == -2
  assert exact.is_negative_definite([[-2, 0], [0, -1]])
  assert not exact.is_negative_definite([[-1, 2], [2, -1]])


def test_span_solver():
  solver = exact.SpanSolver([[1, 0, 1], [0, 1, 1]])
  assert solver.solve([2, 3, 5]) == [2, 3]
  assert solver.solve([1, 1, 0]) is None
  with pytest.raises(ValueError):
    exact.SpanSolver([[1, 1], [2, 2]])


@given(matrices)
def test_nullspace_is_annihilated(m):
  for v in exact.nullspace(m, len(m[0])):
    assert all(sum(r[j] * v[j] for j in range(len(v))) == 0 for r in m)
  assert exact.rank(m) + len(exact.nullspace(m, len(m[0]))) == len(m[0])


@given(matrices, hst.lists(small_fraction, min_size=4, max_size=4))
def test_solve_in_span_roundtrip(m, coeffs):
  target = [sum(c * row[j] for c, row in zip(coeffs, m)) for j in range(len(m[0]))]
  x = exact.solve_in_span(m, target)
  assert x is not None
  assert [sum(c * row[j] for c, row in zip(x, m)) for j in range(len(m[0]))] == target
  assert all(isinstance(v, Fraction) for v in x)
