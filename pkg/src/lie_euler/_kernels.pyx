# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Fused stencil and reduction for the Euler residual.

Each call covers interior time slabs [t0, t1) and folds the five point
residuals into running max and sum-of-squares accumulators. The arithmetic
order matches the numpy fallback so the max norms agree bit for bit.
"""

from libc.math cimport fabs


cdef inline double _d(double a, double b, double h) nogil:
    return (a - b) / h


def accumulate(const double[:, :, :, ::1] U, const double[:, :, :, ::1] V,
               const double[:, :, :, ::1] W, const double[:, :, :, ::1] P,
               const double[:, :, :, ::1] Q, h, double gamma, int scheme,
               Py_ssize_t t0, Py_ssize_t t1, double[::1] maxn, double[::1] sumsq):
    cdef Py_ssize_t nx = U.shape[1], ny = U.shape[2], nz = U.shape[3]
    cdef Py_ssize_t a, b, c, d
    cdef double ht, hx, hy, hz
    cdef int fwd = scheme == 1
    # central differences span 2h, forward differences span h
    if fwd:
        ht, hx, hy, hz = h[0], h[1], h[2], h[3]
    else:
        ht, hx, hy, hz = 2.0 * h[0], 2.0 * h[1], 2.0 * h[2], 2.0 * h[3]
    cdef double u, v, w, p, q, div, r
    cdef double ut, ux, uy, uz, vt, vx, vy, vz, wt, wx, wy, wz
    cdef double pt, px, py, pz, qt, qx, qy, qz
    cdef Py_ssize_t lo
    cdef double m0 = maxn[0], m1 = maxn[1], m2 = maxn[2], m3 = maxn[3], m4 = maxn[4]
    cdef double s0 = sumsq[0], s1 = sumsq[1], s2 = sumsq[2], s3 = sumsq[3], s4 = sumsq[4]
    with nogil:
        for a in range(t0, t1):
            for b in range(1, nx - 1):
                for c in range(1, ny - 1):
                    for d in range(1, nz - 1):
                        u = U[a, b, c, d]; v = V[a, b, c, d]; w = W[a, b, c, d]
                        p = P[a, b, c, d]; q = Q[a, b, c, d]
                        if fwd:
                            ut = _d(U[a + 1, b, c, d], u, ht); ux = _d(U[a, b + 1, c, d], u, hx)
                            uy = _d(U[a, b, c + 1, d], u, hy); uz = _d(U[a, b, c, d + 1], u, hz)
                            vt = _d(V[a + 1, b, c, d], v, ht); vx = _d(V[a, b + 1, c, d], v, hx)
                            vy = _d(V[a, b, c + 1, d], v, hy); vz = _d(V[a, b, c, d + 1], v, hz)
                            wt = _d(W[a + 1, b, c, d], w, ht); wx = _d(W[a, b + 1, c, d], w, hx)
                            wy = _d(W[a, b, c + 1, d], w, hy); wz = _d(W[a, b, c, d + 1], w, hz)
                            pt = _d(P[a + 1, b, c, d], p, ht); px = _d(P[a, b + 1, c, d], p, hx)
                            py = _d(P[a, b, c + 1, d], p, hy); pz = _d(P[a, b, c, d + 1], p, hz)
                            qt = _d(Q[a + 1, b, c, d], q, ht); qx = _d(Q[a, b + 1, c, d], q, hx)
                            qy = _d(Q[a, b, c + 1, d], q, hy); qz = _d(Q[a, b, c, d + 1], q, hz)
                        else:
                            ut = _d(U[a + 1, b, c, d], U[a - 1, b, c, d], ht)
                            ux = _d(U[a, b + 1, c, d], U[a, b - 1, c, d], hx)
                            uy = _d(U[a, b, c + 1, d], U[a, b, c - 1, d], hy)
                            uz = _d(U[a, b, c, d + 1], U[a, b, c, d - 1], hz)
                            vt = _d(V[a + 1, b, c, d], V[a - 1, b, c, d], ht)
                            vx = _d(V[a, b + 1, c, d], V[a, b - 1, c, d], hx)
                            vy = _d(V[a, b, c + 1, d], V[a, b, c - 1, d], hy)
                            vz = _d(V[a, b, c, d + 1], V[a, b, c, d - 1], hz)
                            wt = _d(W[a + 1, b, c, d], W[a - 1, b, c, d], ht)
                            wx = _d(W[a, b + 1, c, d], W[a, b - 1, c, d], hx)
                            wy = _d(W[a, b, c + 1, d], W[a, b, c - 1, d], hy)
                            wz = _d(W[a, b, c, d + 1], W[a, b, c, d - 1], hz)
                            pt = _d(P[a + 1, b, c, d], P[a - 1, b, c, d], ht)
                            px = _d(P[a, b + 1, c, d], P[a, b - 1, c, d], hx)
                            py = _d(P[a, b, c + 1, d], P[a, b, c - 1, d], hy)
                            pz = _d(P[a, b, c, d + 1], P[a, b, c, d - 1], hz)
                            qt = _d(Q[a + 1, b, c, d], Q[a - 1, b, c, d], ht)
                            qx = _d(Q[a, b + 1, c, d], Q[a, b - 1, c, d], hx)
                            qy = _d(Q[a, b, c + 1, d], Q[a, b, c - 1, d], hy)
                            qz = _d(Q[a, b, c, d + 1], Q[a, b, c, d - 1], hz)
                        div = ux + vy + wz
                        r = fabs(ut + u * ux + v * uy + w * uz + px / q)
                        if r > m0: m0 = r
                        s0 += r * r
                        r = fabs(vt + u * vx + v * vy + w * vz + py / q)
                        if r > m1: m1 = r
                        s1 += r * r
                        r = fabs(wt + u * wx + v * wy + w * wz + pz / q)
                        if r > m2: m2 = r
                        s2 += r * r
                        r = fabs(qt + q * div + u * qx + v * qy + w * qz)
                        if r > m3: m3 = r
                        s3 += r * r
                        r = fabs(pt + gamma * p * div + u * px + v * py + w * pz)
                        if r > m4: m4 = r
                        s4 += r * r
    maxn[0] = m0; maxn[1] = m1; maxn[2] = m2; maxn[3] = m3; maxn[4] = m4
    sumsq[0] = s0; sumsq[1] = s1; sumsq[2] = s2; sumsq[3] = s3; sumsq[4] = s4
