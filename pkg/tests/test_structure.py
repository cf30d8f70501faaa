from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from lie_euler import exact
from lie_euler import structure as st
from lie_euler.reference import X_TABLE, Y_TABLE, compare_table, table_entry

from strategies import small_fraction

G = st.symmetry_algebra()
G1 = st.quotient_algebra()
vec13 = hst.lists(small_fraction, min_size=13, max_size=13)


def test_tables_match_reference():
  assert compare_table(G, X_TABLE) == []
  assert compare_table(G1, Y_TABLE) == []


def test_reference_table_spot_entries():
  # [X1, X5] = 0, [X4, X5] = X1, [X10, X11] = -X12
  assert table_entry(X_TABLE, 1, 5, 13) == [0] * 13
  assert G.bracket_basis(3, 4) == [Fraction(int(k == 0)) for k in range(13)]
  assert G.format_vector(G.bracket_basis(9, 10)) in ("-X12", "- X12")


def test_center_is_x13():
  assert st.center(G).support_labels() == ["X13"]
  assert st.center(G1).dim == 0


def test_radical_series_and_levi():
  r = st.span(G1, range(1, 10))
  assert [s.support_labels() for s in st.derived_series(r)] == [
      [f"Y{k}" for k in range(1, 10)], [f"Y{k}" for k in range(1, 8)], ["Y1", "Y2", "Y3"], []]
  rep = st.levi_verify(G1, r, st.span(G1, [10, 11, 12]))
  assert rep.ok and rep.failures == []


def test_derived_g1_not_idempotent():
  # frozen from exact elimination: Y4 only appears as [Y4, Y8], which is lost at the next step
  d1 = st.derived_subalgebra(G1.whole())
  d2 = st.derived_subalgebra(d1)
  assert d1.support_labels() == ["Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "Y7", "Y10", "Y11", "Y12"]
  assert d2.dim == 9 and "Y4" not in d2.support_labels()


def test_levi_factor_is_compact_so3():
  s = st.span(G1, [10, 11, 12])
  assert exact.is_negative_definite(s.killing_form())
  ident = st.so3_identification(s)
  assert ident is not None
  assert st.killing_form(st.so3()) == [[-2 if i == j else 0 for j in range(3)] for i in range(3)]


def test_complement_and_galilean_ideal():
  assert st.complement_check(G) == {"ideal": True, "complement_abelian": True,
                                    "complementary": True, "galilean": True}


def test_radical_bracket_checks():
  checks = st.radical_structure_checks(G1)
  assert checks["span{Y4..Y7} abelian"] is False
  assert checks["r1 / span{Y1,Y2,Y3} abelian"] is True
  others = {k: v for k, v in checks.items() if "Y4..Y7" not in k}
  assert all(others.values())


def test_reference_algebras():
  h = st.heisenberg()
  assert st.center(h).dim == 1 and st.is_solvable(h.whole())
  assert not st.is_solvable(st.so3().whole())
  assert st.center(st.abelian(4)).dim == 4


def test_bad_constants_rejected():
  with pytest.raises(st.StructureError):
    st.StructureConstants(3, {(0, 1, 2): 1, (1, 0, 2): 1})
  with pytest.raises(st.StructureError):
    st.quotient(G, st.span(G, [1]))


def test_not_closed_subspace_detected():
  assert not st.span(G1, [4, 5]).closed


@settings(max_examples=50, deadline=None)
@given(vec13, vec13, vec13)
def test_bracket_bilinear_antisymmetric_jacobi(a, b, c):
  br = G.bracket
  assert br(a, b) == [-x for x in br(b, a)]
  lhs = [sum(v) for v in zip(br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b)))]
  assert not any(lhs)


@settings(max_examples=20, deadline=None)
@given(vec13, vec13, vec13)
def test_killing_form_invariant(a, b, c):
  K = st.killing_form(G)
  def k(x, y):
    return sum(x[i] * K[i][j] * y[j] for i in range(13) for j in range(13))
  assert k(G.bracket(a, b), c) == k(a, G.bracket(b, c))
