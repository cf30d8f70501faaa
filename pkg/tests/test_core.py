from fractions import Fraction

import pytest
from hypothesis import given, settings

from lie_euler.core import (
    Polynomial,
    VectorField,
    bracket,
    evaluate,
    lie_derivative,
    prolong1,
    total_derivative,
)

from strategies import polynomials, vector_fields

x, y, t, u, q = (Polynomial.var(n) for n in ("x", "y", "t", "u", "q"))


def test_arithmetic_and_printing():
  f = (x + 2 * y) * (x - y)
  assert f == x ** 2 + x * y - 2 * y ** 2
  assert f.degree() == 2
  assert f.coefficient({"x": 1, "y": 1}) == 1
  assert (f - f).is_zero()
  assert Polynomial.const(Fraction(1, 3)) * 3 == Polynomial.const(1)


def test_diff_and_subs():
  f = x ** 3 * y + t
  assert f.diff("x") == 3 * x ** 2 * y
  assert f.subs({"x": y + 1}) == (y + 1) ** 3 * y + t
  assert f.evaluate({"x": 2, "y": 1, "t": 0.5}) == pytest.approx(8.5)


def test_bracket_of_translation_and_scaling():
  X = VectorField({"x": Polynomial.const(1)})
  Y = VectorField({"x": x, "u": u})
  assert bracket(X, Y) == X
  assert bracket(Y, X) == -X


def test_text_and_json_roundtrip():
  X = VectorField({"x": t, "u": Polynomial.const(1), "q": -2 * q})
  assert VectorField.from_text(X.to_text()) == X
  assert VectorField.from_json(X.to_json()) == X
  with pytest.raises(ValueError):
    VectorField.from_text("3 d_x")


def test_prolongation_of_boost():
  # X = t d_x + d_u: the jet coefficient of u_x is 0 and of u_t is -u_x
  P = prolong1(VectorField({"x": t, "u": Polynomial.const(1)}))
  assert P.jet("u", "t") == -Polynomial.var("u_x")
  assert P.jet("u", "x").is_zero()
  assert P.is_consistent()


def test_total_derivative():
  assert total_derivative(u * x, "x") == Polynomial.var("u_x") * x + u


def test_evaluate_point():
  X = VectorField({"x": t, "u": Polynomial.const(1)})
  assert evaluate(X, [2, 0, 0, 0, 0, 0, 0, 0, 0])[:5] == [0, 2, 0, 0, 1]


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
  assert (f + g) * h == f * h + g * h
  assert f * g == g * f
  assert (f * g) * h == f * (g * h)


@given(polynomials(), polynomials())
def test_leibniz(f, g):
  assert (f * g).diff("x") == f.diff("x") * g + f * g.diff("x")


@settings(max_examples=40, deadline=None)
@given(vector_fields(), vector_fields(), vector_fields())
def test_bracket_is_lie(X, Y, Z):
  assert bracket(X, Y) == -bracket(Y, X)
  jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
  assert jac.is_zero()


@settings(max_examples=30, deadline=None)
@given(vector_fields(), vector_fields(), polynomials())
def test_bracket_acts_as_commutator(X, Y, f):
  assert bracket(X, Y).apply(f) == X.apply(Y.apply(f)) - Y.apply(X.apply(f))


@settings(max_examples=25, deadline=None)
@given(vector_fields(max_degree=1), vector_fields(max_degree=1))
def test_prolongation_respects_bracket(X, Y):
  # pr[X, Y] = [pr X, pr Y] on first-order jet functions
  f = Polynomial.var("u_x") * Polynomial.var("v_t") + Polynomial.var("q_z")
  lhs = lie_derivative(prolong1(bracket(X, Y)), f)
  PX, PY = prolong1(X), prolong1(Y)
  rhs = lie_derivative(PX, lie_derivative(PY, f)) - lie_derivative(PY, lie_derivative(PX, f))
  assert lhs == rhs
