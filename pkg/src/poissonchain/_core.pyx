# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the per-step kernels.

Mirrors poissonchain._core_py (same functions, same semantics); see that
module for the array layout. Results agree with the fallback up to
floating-point summation order.
"""

from libc.math cimport cbrt, fabs, fmin, sqrt

BACKEND = "cython"

DELTA_MAX = 0.125

cdef double _DELTA_MAX = 0.125


def step_tables(double[::1] s, Py_ssize_t n, double alpha,
                double[::1] delta, double[::1] area,
                double[::1] cum_plain, double[::1] cum_adm):
    """Per-wedge band half-widths, admissible areas, and cumulative sums for
    slots [0, n). Returns (total plain area, total admissible area)."""
    cdef Py_ssize_t i
    cdef double d, a, plain = 0.0, adm = 0.0
    for i in range(n):
        d = fmin(_DELTA_MAX, sqrt(alpha / cbrt(s[i])) * 0.125)
        a = d * s[i] * 0.5
        delta[i] = d
        area[i] = a
        plain += s[i] * 0.5
        adm += a
        cum_plain[i] = plain
        cum_adm[i] = adm
    return plain, adm


def ell_sum(double[::1] s, Py_ssize_t n):
    """Sum of cube roots of the first n doubled areas."""
    cdef Py_ssize_t i
    cdef double total = 0.0
    for i in range(n):
        total += cbrt(s[i])
    return total


cdef Py_ssize_t _bisect_right(double[::1] cum, Py_ssize_t n, double v):
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if cum[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    if lo >= n:
        lo = n - 1
    return lo


cdef inline void _place(double[:, ::1] verts, Py_ssize_t slot,
                        double u1, double u2, double* x, double* y):
    cdef double r1 = sqrt(u1)
    x[0] = verts[slot, 0] + r1 * ((verts[slot, 2] - verts[slot, 0])
                                  + u2 * (verts[slot, 4] - verts[slot, 2]))
    y[0] = verts[slot, 1] + r1 * ((verts[slot, 3] - verts[slot, 1])
                                  + u2 * (verts[slot, 5] - verts[slot, 3]))


cdef inline void _canon(double[:, ::1] fwd, Py_ssize_t slot,
                        double x, double y, double* t, double* tau):
    # canonical = M (p - origin) + (-1, 1); see _core_py for the layout
    cdef double dx = x - fwd[slot, 2]
    cdef double dy = y - fwd[slot, 5]
    cdef double tt = fwd[slot, 0] * dx + fwd[slot, 1] * dy - 1.0
    cdef double yc = fwd[slot, 3] * dx + fwd[slot, 4] * dy + 1.0
    t[0] = tt
    tau[0] = yc - tt * tt


def count_admissible(double[:, ::1] verts, double[:, ::1] fwd,
                     double[::1] delta, double[::1] cum_plain,
                     Py_ssize_t n, Py_ssize_t k, double[:, ::1] u_place):
    """Number of band-admissible points among k placed Poisson points."""
    cdef Py_ssize_t j, slot
    cdef double total = cum_plain[n - 1]
    cdef double x, y, t, tau
    cdef int count = 0
    for j in range(k):
        slot = _bisect_right(cum_plain, n, u_place[j, 0] * total)
        _place(verts, slot, u_place[j, 1], u_place[j, 2], &x, &y)
        _canon(fwd, slot, x, y, &t, &tau)
        if fabs(t) <= 0.5 and fabs(tau) <= delta[slot]:
            count += 1
    return count


def resolve_step(double[:, ::1] verts, double[:, ::1] fwd, double[:, ::1] inv,
                 double[::1] delta, double[::1] cum_plain, double[::1] cum_adm,
                 Py_ssize_t n, Py_ssize_t k, double[:, ::1] u_place,
                 double u_select, double[::1] u_fallback):
    """Choose the insertion point for one step; see the fallback docstring.
    Returns (hit, slot, adm_count, qx, qy, px, py, rx, ry)."""
    cdef Py_ssize_t j, slot = 0, sl
    cdef int adm_count = 0, hit, pick, seen
    cdef double plain_total = cum_plain[n - 1]
    cdef double x, y, t = 0.0, tau = 0.0, qx = 0.0, qy = 0.0, yq
    cdef double xp, yp, xr, yr, px, py, rx, ry
    for j in range(k):
        sl = _bisect_right(cum_plain, n, u_place[j, 0] * plain_total)
        _place(verts, sl, u_place[j, 1], u_place[j, 2], &x, &y)
        _canon(fwd, sl, x, y, &t, &tau)
        if fabs(t) <= 0.5 and fabs(tau) <= delta[sl]:
            adm_count += 1
    if adm_count > 0:
        pick = <int>(u_select * adm_count)
        if pick >= adm_count:
            pick = adm_count - 1
        seen = 0
        for j in range(k):
            sl = _bisect_right(cum_plain, n, u_place[j, 0] * plain_total)
            _place(verts, sl, u_place[j, 1], u_place[j, 2], &x, &y)
            _canon(fwd, sl, x, y, &t, &tau)
            if fabs(t) <= 0.5 and fabs(tau) <= delta[sl]:
                if seen == pick:
                    slot = sl
                    qx = x
                    qy = y
                    break
                seen += 1
        hit = 1
    else:
        slot = _bisect_right(cum_adm, n, u_fallback[0] * cum_adm[n - 1])
        t = u_fallback[1] - 0.5
        tau = (2.0 * u_fallback[2] - 1.0) * delta[slot]
        yq = t * t + tau
        qx = inv[slot, 0] * (t + 1.0) + inv[slot, 1] * (yq - 1.0) + inv[slot, 2]
        qy = inv[slot, 3] * (t + 1.0) + inv[slot, 4] * (yq - 1.0) + inv[slot, 5]
        hit = 0
    xp = (t * t - tau - 1.0) / (2.0 * (t + 1.0))
    yp = -2.0 * xp - 1.0
    xr = (1.0 - t * t + tau) / (2.0 * (1.0 - t))
    yr = 2.0 * xr - 1.0
    px = inv[slot, 0] * (xp + 1.0) + inv[slot, 1] * (yp - 1.0) + inv[slot, 2]
    py = inv[slot, 3] * (xp + 1.0) + inv[slot, 4] * (yp - 1.0) + inv[slot, 5]
    rx = inv[slot, 0] * (xr + 1.0) + inv[slot, 1] * (yr - 1.0) + inv[slot, 2]
    ry = inv[slot, 3] * (xr + 1.0) + inv[slot, 4] * (yr - 1.0) + inv[slot, 5]
    return hit, slot, adm_count, qx, qy, px, py, rx, ry
