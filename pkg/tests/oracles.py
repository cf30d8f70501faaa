"""Independent oracles, transcribed by hand and kept apart from the package."""

import numpy as np


def composite_translation_boost_formula(a, s):
  """Image of sum a_k X_k under the seven translation/boost adjoints, term by term."""
  a = [None] + list(a)
  s = [None] + list(s)
  out = np.array([
      s[3] * a[12] - s[2] * a[10] - s[1] * a[9] + a[1] - s[5] * s[4] * a[8] + s[5] * a[4] - s[4] * a[5],
      -s[6] * s[4] * a[8] + s[3] * a[11] - s[2] * a[9] + s[1] * a[10] + a[2] + s[6] * a[4] - s[4] * a[6],
      -s[7] * s[4] * a[8] - s[3] * a[9] - s[2] * a[11] - s[1] * a[12] + a[3] + s[7] * a[4] - s[4] * a[7],
      a[4] - s[4] * a[8],
      -s[6] * a[10] - s[5] * a[9] + s[5] * a[8] + a[5] + s[7] * a[12],
      -s[6] * a[9] + s[6] * a[8] + s[5] * a[10] + a[6] + s[7] * a[11],
      s[7] * a[8] - s[6] * a[11] - s[5] * a[12] + a[7] - s[7] * a[9],
      a[8], a[9], a[10], a[11], a[12], a[13],
  ])
  return out


def expm_taylor(m, terms=80):
  """Plain Taylor series of the matrix exponential, no scaling tricks."""
  out = np.eye(len(m))
  term = np.eye(len(m))
  for k in range(1, terms):
    term = term @ m / k
    out = out + term
  return out
