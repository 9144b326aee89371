"""Pure numpy implementation of the per-step kernels.

This is the fallback used when the compiled extension (poissonchain._core)
is unavailable; both expose the same functions and are interchangeable up
to floating-point summation order. All randomness is drawn by the caller
and passed in as plain uniforms, so a run is reproducible regardless of
which backend executes it.

Array layout (owned by chain.InscribedChainPair):
  verts[i] = (x_prev, y_prev, x_apex, y_apex, x_next, y_next)
  fwd[i]   = (m00, m01, ox, m10, m11, oy): wedge -> canonical triangle as
             canonical = M (p - origin) + (-1, 1), origin = c_prev
  inv[i]   = (i00, i01, ox, i10, i11, oy): canonical -> wedge as
             original = M^-1 (c - (-1, 1)) + origin
  s[i]     = doubled area of wedge i (positive)

The local origin keeps all products at wedge scale; see chain._write_slot.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

DELTA_MAX = 0.125


def step_tables(s, n, alpha, delta, area, cum_plain, cum_adm):
    """Per-wedge band half-widths and admissible areas for slots [0, n).

    delta[i] = min(1/8, sqrt(alpha / s_i^(1/3)) / 8)
    area[i]  = delta[i] * s_i / 2          (plain admissible area)
    cum_plain/cum_adm = running sums of s_i/2 and area[i].

    Returns (total plain area, total admissible area).
    """
    sl = s[:n]
    d = delta[:n]
    np.cbrt(sl, out=d)
    np.divide(alpha, d, out=d)
    np.sqrt(d, out=d)
    d *= 0.125
    np.minimum(d, DELTA_MAX, out=d)
    ar = area[:n]
    np.multiply(d, sl, out=ar)
    ar *= 0.5
    np.multiply(sl, 0.5, out=cum_plain[:n])
    np.cumsum(cum_plain[:n], out=cum_plain[:n])
    np.cumsum(ar, out=cum_adm[:n])
    return float(cum_plain[n - 1]), float(cum_adm[n - 1])


def ell_sum(s, n):
    """Sum of cube roots of the first n doubled areas."""
    return float(np.cbrt(s[:n]).sum())


def _scan_points(verts, fwd, delta, cum_plain, n, k, u_place):
    """Place k Poisson points over the wedge union and test band membership.

    Returns (slots, xs, ys, ts, taus, ok)."""
    total = cum_plain[n - 1]
    slots = np.searchsorted(cum_plain[:n], u_place[:, 0] * total, side="right")
    np.minimum(slots, n - 1, out=slots)
    v = verts[slots]
    r1 = np.sqrt(u_place[:, 1])
    r2 = u_place[:, 2]
    xs = v[:, 0] + r1 * ((v[:, 2] - v[:, 0]) + r2 * (v[:, 4] - v[:, 2]))
    ys = v[:, 1] + r1 * ((v[:, 3] - v[:, 1]) + r2 * (v[:, 5] - v[:, 3]))
    f = fwd[slots]
    dx = xs - f[:, 2]
    dy = ys - f[:, 5]
    ts = f[:, 0] * dx + f[:, 1] * dy - 1.0
    yc = f[:, 3] * dx + f[:, 4] * dy + 1.0
    taus = yc - ts * ts
    ok = (np.abs(ts) <= 0.5) & (np.abs(taus) <= delta[slots])
    return slots, xs, ys, ts, taus, ok


def count_admissible(verts, fwd, delta, cum_plain, n, k, u_place):
    """Number of band-admissible points among k placed Poisson points."""
    if k == 0:
        return 0
    ok = _scan_points(verts, fwd, delta, cum_plain, n, k, u_place)[5]
    return int(ok.sum())


def _chord_endpoints(t, tau):
    # Intersections of the canonical chord y = 2tx - t^2 + tau with the
    # sides through (-1,1)-(0,-1) and (1,1)-(0,-1); denominators are >= 1
    # for |t| <= 1/2.
    xp = (t * t - tau - 1.0) / (2.0 * (t + 1.0))
    yp = -2.0 * xp - 1.0
    xr = (1.0 - t * t + tau) / (2.0 * (1.0 - t))
    yr = 2.0 * xr - 1.0
    return xp, yp, xr, yr


def resolve_step(verts, fwd, inv, delta, cum_plain, cum_adm, n, k,
                 u_place, u_select, u_fallback):
    """Choose the insertion point for one step.

    k placed Poisson points are tested against the band of the wedge they
    landed in; if any are admissible one is chosen uniformly (a hit),
    otherwise a wedge is picked proportionally to its admissible area and a
    band point sampled in it (a miss / fallback).

    Returns (hit, slot, adm_count, qx, qy, px, py, rx, ry).
    """
    adm_count = 0
    if k > 0:
        slots, xs, ys, ts, taus, ok = _scan_points(
            verts, fwd, delta, cum_plain, n, k, u_place)
        adm_count = int(ok.sum())
    if adm_count > 0:
        idx = np.nonzero(ok)[0]
        pick = min(int(u_select * adm_count), adm_count - 1)
        j = idx[pick]
        slot = int(slots[j])
        qx, qy = float(xs[j]), float(ys[j])
        t, tau = float(ts[j]), float(taus[j])
        hit = 1
    else:
        target = u_fallback[0] * cum_adm[n - 1]
        slot = int(min(np.searchsorted(cum_adm[:n], target, side="right"), n - 1))
        t = u_fallback[1] - 0.5
        tau = (2.0 * u_fallback[2] - 1.0) * delta[slot]
        yq = t * t + tau
        m = inv[slot]
        qx = m[0] * (t + 1.0) + m[1] * (yq - 1.0) + m[2]
        qy = m[3] * (t + 1.0) + m[4] * (yq - 1.0) + m[5]
        hit = 0
    xp, yp, xr, yr = _chord_endpoints(t, tau)
    m = inv[slot]
    px = m[0] * (xp + 1.0) + m[1] * (yp - 1.0) + m[2]
    py = m[3] * (xp + 1.0) + m[4] * (yp - 1.0) + m[5]
    rx = m[0] * (xr + 1.0) + m[1] * (yr - 1.0) + m[2]
    ry = m[3] * (xr + 1.0) + m[4] * (yr - 1.0) + m[5]
    return hit, slot, adm_count, float(qx), float(qy), px, py, rx, ry
