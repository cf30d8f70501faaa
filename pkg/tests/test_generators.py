import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from lie_euler.core import Polynomial, VectorField
from lie_euler.generators import (
    FAMILIES,
    EulerSystem,
    GeneratorParameters,
    corrupt,
    errata,
    generator_from_parameters,
    infinitesimal_invariance,
    parameter_basis,
    standard_generators,
    verify_determining,
)

from strategies import small_fraction

GENS = standard_generators()


@pytest.mark.parametrize("i", range(1, 14))
def test_generator_invariant_numeric_gamma(i):
  for gamma in (Fraction(7, 5), Fraction(5, 3), Fraction(1, 2)):
    assert infinitesimal_invariance(GENS[i - 1], EulerSystem(gamma), symbolic_gamma=False).invariant


def test_non_symmetries_rejected():
  q = Polynomial.var("q")
  for X in (VectorField({"p": q}), VectorField({"t": Polynomial.var("x")}), GENS[12] * 1 + VectorField({"q": q})):
    assert not infinitesimal_invariance(X).invariant


def test_float_gamma_rejected_on_symbolic_path():
  with pytest.raises(TypeError):
    infinitesimal_invariance(GENS[0], EulerSystem(1.4), symbolic_gamma=False)


def test_gamma_warning():
  assert EulerSystem(Fraction(1, 2)).warning
  assert not EulerSystem().warning


def test_parameter_basis_matches_generators():
  for k, (sign, i) in parameter_basis().items():
    assert generator_from_parameters(GeneratorParameters.unit(k)) == GENS[i - 1] * sign


def test_parameters_length_checked():
  with pytest.raises(ValueError):
    GeneratorParameters((1, 2, 3))


@pytest.mark.parametrize("family", FAMILIES)
def test_each_corruption_hits_its_family(family):
  params = GeneratorParameters.random(random.Random(7))
  assert {v.family for v in verify_determining(corrupt(params, family))} >= {family}


def test_errata_entries_are_complete():
  items = errata()
  assert len(items) == 10
  for e in items:
    assert set(e) == {"location", "printed", "implemented", "evidence"}


@settings(max_examples=60, deadline=None)
@given(hst.lists(small_fraction, min_size=13, max_size=13))
def test_general_solution_satisfies_determining_equations(a):
  assert verify_determining(GeneratorParameters(tuple(a))) == []


@settings(max_examples=10, deadline=None)
@given(hst.lists(hst.integers(-3, 3), min_size=13, max_size=13))
def test_general_generator_is_symmetry(a):
  X = generator_from_parameters(GeneratorParameters(tuple(a)))
  assert infinitesimal_invariance(X).invariant
