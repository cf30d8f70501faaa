"""numpy fallback for the residual kernel, same arithmetic order."""

from __future__ import annotations

import numpy as np


def _diff(f: np.ndarray, axis: int, h: float, scheme: int, t0: int, t1: int) -> np.ndarray:
  n = f.shape
  sl = [slice(t0, t1), slice(1, n[1] - 1), slice(1, n[2] - 1), slice(1, n[3] - 1)]
  hi = list(sl)
  lo = list(sl)
  hi[axis] = slice(sl[axis].start + 1, sl[axis].stop + 1)
  if scheme == 1:
    return (f[tuple(hi)] - f[tuple(sl)]) / h
  lo[axis] = slice(sl[axis].start - 1, sl[axis].stop - 1)
  return (f[tuple(hi)] - f[tuple(lo)]) / (2.0 * h)


def residual_fields(U, V, W, P, Q, h, gamma: float, scheme: int = 0,
                    t0: int = 1, t1: int | None = None) -> tuple:
  """The five point residuals on interior slabs [t0, t1), signed."""
  if t1 is None:
    t1 = U.shape[0] - 1
  core = (slice(t0, t1),) + (slice(1, -1),) * 3
  u, v, w, p, q = U[core], V[core], W[core], P[core], Q[core]
  D = lambda f: [_diff(f, k, h[k], scheme, t0, t1) for k in range(4)]
  ut, ux, uy, uz = D(U)
  vt, vx, vy, vz = D(V)
  wt, wx, wy, wz = D(W)
  pt, px, py, pz = D(P)
  qt, qx, qy, qz = D(Q)
  div = ux + vy + wz
  return (
      ut + u * ux + v * uy + w * uz + px / q,
      vt + u * vx + v * vy + w * vz + py / q,
      wt + u * wx + v * wy + w * wz + pz / q,
      qt + q * div + u * qx + v * qy + w * qz,
      pt + gamma * p * div + u * px + v * py + w * pz,
  )


def accumulate(U, V, W, P, Q, h, gamma: float, scheme: int, t0: int, t1: int,
               maxn: np.ndarray, sumsq: np.ndarray) -> None:
  for k, r in enumerate(residual_fields(U, V, W, P, Q, h, gamma, scheme, t0, t1)):
    a = np.abs(r)
    if a.size:
      maxn[k] = max(maxn[k], float(a.max()))
      sumsq[k] += float(np.sum(a * a))
