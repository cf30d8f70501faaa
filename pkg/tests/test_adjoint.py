from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as hst

from lie_euler import adjoint as adj

from oracles import composite_translation_boost_formula, expm_taylor

E = np.eye(13)
params = hst.floats(-2, 2, allow_nan=False)
gens = hst.integers(1, 13)


def test_ad13_is_zero():
  assert not adj.ad_matrix(13).any()
  assert adj.ad_matrix(13, exact=True) == [[0] * 13 for _ in range(13)]


def test_ad_matrix_rejects_bad_index():
  with pytest.raises(ValueError):
    adj.ad_matrix(14)


def test_series_examples():
  assert np.array_equal(adj.adjoint_series(13, 0.8).m, E)
  # [X9, X1] = -X1 gives a geometric series
  assert adj.adjoint_series(9, 0.3).apply(E[0])[0] == pytest.approx(np.exp(0.3), rel=1e-15)
  with pytest.raises(adj.NotConverged):
    adj.adjoint_series(8, 40.0, max_terms=5)


@pytest.mark.parametrize("i", range(1, 14))
def test_closed_form_against_expm(i):
  for s in (-1.5, -0.3, 0.7, 2.0):
    ref = scipy.linalg.expm(-s * adj.ad_matrix(i))
    assert np.abs(adj.adjoint_closed(i, s).m - ref).max() <= 1e-12
    assert np.abs(expm_taylor(-s * adj.ad_matrix(i)) - ref).max() <= 1e-12
  assert np.array_equal(adj.adjoint_closed(i, 0.0).m, E)


def test_printed_layout_is_transpose():
  A = adj.adjoint_closed(4, 0.5)
  assert np.array_equal(A.printed_layout(), A.m.T)


def test_composition_examples():
  assert np.array_equal(adj.compose_translation_boost([0.0] * 7), E)
  a = np.arange(1.0, 14.0)
  s = [0.1, -0.2, 0.3, 0.7, -0.5, 0.4, 0.9]
  img = adj.compose_translation_boost(s) @ a
  assert img[3] == pytest.approx(a[3] - s[3] * a[7])
  assert np.abs(img - composite_translation_boost_formula(a, s)).max() <= 1e-12
  with pytest.raises(ValueError):
    adj.compose_translation_boost([0.0] * 6)


@pytest.mark.parametrize("cid,mask", [(1, {8, 9, 10, 11, 12, 13}), (24, {1, 2, 3, 13}),
                                      (5, {5, 6, 7, 8, 9, 13})])
def test_canonical_masks(cid, mask):
  assert adj.canonical_mask(cid) == mask


def test_canonical_mask_invalid():
  with pytest.raises(ValueError):
    adj.canonical_mask(0)


@pytest.mark.parametrize("a,cid", [
    ([0] * 7 + [1, 3] + [0] * 4, 1),
    ([0] * 7 + [1, 1, 2] + [0] * 3, 2),
    ([0] * 4 + [1] + [0] * 8, 21),
])
def test_classify_examples(a, cid):
  assert adj.classify(a) == cid


def test_zero_element_rejected():
  with pytest.raises(ValueError, match="zero element"):
    adj.classify([0] * 13)
  with pytest.raises(ValueError, match="zero element"):
    adj.normalize([0] * 13)
  with pytest.raises(ValueError, match="zero element"):
    adj.normalize_exact([0] * 13)


def test_normalize_case1_example():
  a = np.zeros(13)
  a[[0, 4, 7, 8]] = [1, 1, 1, 3]
  res = adj.normalize(a)
  assert res.case_id == 1 and res.status == "ok"
  rep = np.array(res.representative)
  assert np.abs(rep[:7]).max() <= 1e-12
  assert np.abs(adj.replay(a, res.moves) - rep).max() <= 1e-12
  # oracle: apply the recorded parameters directly through the composition
  s = [0.0] * 7
  for mv in res.moves:
    if mv[0] == "ad":
      s[mv[1] - 1] = mv[2]
  assert np.abs(adj.compose_translation_boost(s) @ a - rep).max() <= 1e-12


def test_normalize_x8_needs_no_moves():
  a = E[7]
  res = adj.normalize(a)
  assert res.moves == [] and res.representative == a.tolist()
  assert set(np.flatnonzero(a) + 1) <= adj.canonical_mask(res.case_id)


def test_normalize_case16_boost_clears_x1():
  a = E[0] + E[3]
  assert adj.classify(a) == 14 and adj.satisfies(16, a)
  res = adj.normalize(a, case_id=16)
  assert res.status == "ok"
  assert [mv[1] for mv in res.moves if mv[0] == "ad"] == [5]
  assert np.abs(np.array(res.representative) - E[3]).max() <= 1e-15


def test_normalize_wrong_case_rejected():
  with pytest.raises(ValueError, match="hypotheses"):
    adj.normalize(E[7], case_id=1)


def test_normalize_exact_rational():
  a = [Fraction(1, 3), 2, 0, Fraction(5, 7), 1, 0, -1, 2, 0, 0, 0, 0, 1]
  res = adj.normalize_exact(a)
  assert res.case_id == 10
  assert all(isinstance(c, Fraction) for c in res.representative)
  assert all(c == 0 for k, c in enumerate(res.representative, 1) if k not in res.mask)
  assert np.abs(adj.replay([float(c) for c in a], res.moves)
                - np.array(res.representative, dtype=float)).max() <= 1e-12


def test_normalize_exact_needs_rotation():
  with pytest.raises(ValueError, match="rotation"):
    adj.normalize_exact([0] * 4 + [0, 0, 1] + [0] * 5 + [0])


def test_gap_between_cases_is_unclassified():
  # a8 = 2 a9 with a9 != 0 is excluded from case 1 and from every later case
  a = 2 * E[7] + E[8]
  assert adj.classify(a) == adj.UNCLASSIFIED
  assert adj.unclassified_reasons(a)[1] == ["a8!=2a9"]
  res = adj.normalize(a)
  assert res.status == "unclassified" and res.moves == []


@pytest.mark.parametrize("cid", range(1, 27))
def test_sampled_case_satisfies_hypotheses(cid):
  rng = np.random.default_rng(cid)
  for _ in range(5):
    a = adj.sample_case(cid, rng)
    assert adj.satisfies(cid, a)


def test_normalization_reproducible():
  rng1, rng2 = np.random.default_rng(3), np.random.default_rng(3)
  r1 = adj.normalize(adj.sample_case(12, rng1), case_id=12)
  r2 = adj.normalize(adj.sample_case(12, rng2), case_id=12)
  assert r1.to_json() == r2.to_json()


@settings(max_examples=60, deadline=None)
@given(gens, params, params)
def test_group_property(i, s, t):
  m = adj.adjoint_closed(i, s).m @ adj.adjoint_closed(i, t).m
  assert np.abs(m - adj.adjoint_closed(i, s + t).m).max() <= 1e-10
  inv = adj.adjoint_closed(i, s).m @ adj.adjoint_closed(i, -s).m
  assert np.abs(inv - E).max() <= 1e-12


@settings(max_examples=60, deadline=None)
@given(gens, params, hst.lists(params, min_size=13, max_size=13),
       hst.lists(params, min_size=13, max_size=13))
def test_automorphism_property(i, s, x, y):
  ads = np.array([adj.ad_matrix(k) for k in range(1, 14)])
  def br(a, b):
    return np.einsum("i,ijk,k->j", a, ads, b)
  M = adj.adjoint_closed(i, s).m
  x, y = np.array(x), np.array(y)
  assert np.abs(M @ br(x, y) - br(M @ x, M @ y)).max() <= 1e-9


@settings(max_examples=40, deadline=None)
@given(hst.integers(1, 26), hst.integers(0, 2 ** 32 - 1))
def test_replay_soundness(cid, seed):
  a = adj.sample_case(cid, np.random.default_rng(seed))
  res = adj.normalize(a, case_id=cid)
  rep = np.array(res.representative)
  assert np.abs(adj.replay(a, res.moves) - rep).max() <= 1e-9
  if res.status == "ok":
    off = [rep[k - 1] for k in range(1, 14) if k not in adj.canonical_mask(cid)]
    assert np.abs(off).max(initial=0.0) <= 1e-9 * max(1.0, np.abs(rep).max())
