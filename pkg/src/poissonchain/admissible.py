"""The admissible-region machinery for a single wedge.

A candidate insertion point Q in a wedge of doubled area S is alpha-admissible
when the induced affine-length decrement S^(1/3) - S1^(1/3) - S2^(1/3) is at
most alpha. This module implements the constructive sufficient test: map the
wedge to the canonical triangle (-1,1), (1,1), (0,-1), and accept Q = (t, t^2
+ tau) with |t| <= 1/2 and |tau| <= delta, delta = min(1/8,
sqrt(alpha/S^(1/3))/8). The chord through Q with slope 2t meets the two
wedge sides in P and R, and the six section ratios it generates all land in
[1/8, 7/8], which bounds the decrement by alpha and feeds the chord
shrinkage bound.

The band region is exact: plain area 2*delta in canonical coordinates,
delta*S/2 after mapping back. Points admissible in the wider
(non-constructive) sense but outside the band are rejected by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .chain import Wedge
from .geometry import AffineMap, Point, cbrt

DELTA_MAX = 0.125


def err(s: float, s1: float, s2: float) -> float:
    """Normalized decrement 1 - (s1/s)^(1/3) - (s2/s)^(1/3).

    err * s^(1/3) is the affine-length decrement of splitting a wedge of
    doubled area s into children of doubled areas s1, s2. Nonnegative for
    every geometrically realizable triple.
    """
    if s <= 0:
        raise ValueError(f"parent doubled area must be positive, got {s}")
    if s1 < 0 or s2 < 0:
        raise ValueError("child areas must be nonnegative")
    return 1.0 - cbrt(s1 / s) - cbrt(s2 / s)


def amgm_expansion_residual(x: float, y: float, z: float) -> float:
    """|(x+y+z)/3 - (xyz)^(1/3) - the cube-root square expansion|.

    The expansion writes the AM-GM gap as (1/6)(a+b+c) * sum of squared
    pairwise cube-root differences with a = x^(1/3) etc.; the identity is
    exact, so the residual is pure floating-point noise.
    """
    if x < 0 or y < 0 or z < 0:
        raise ValueError("inputs must be nonnegative")
    a, b, c = cbrt(x), cbrt(y), cbrt(z)
    lhs = (x + y + z) / 3.0 - a * b * c
    rhs = (a + b + c) * ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2) / 6.0
    return abs(lhs - rhs)


def delta_for(alpha: float, s: float) -> float:
    """Canonical band half-height min(1/8, sqrt(alpha / s^(1/3)) / 8)."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if s <= 0:
        raise ValueError(f"doubled area must be positive, got {s}")
    return min(DELTA_MAX, math.sqrt(alpha / cbrt(s)) / 8.0)


@dataclass(frozen=True)
class AdmissibleBand:
    """The canonical parabola band of one wedge at a given budget."""

    wedge: Wedge
    delta: float
    map: AffineMap  # wedge -> canonical
    region_area: float  # plain area in original coordinates
    t_range: tuple[float, float] = field(default=(-0.5, 0.5))


def band_for(w: Wedge, alpha: float) -> AdmissibleBand:
    delta = delta_for(alpha, w.s)
    # the canonical map scales plain areas by 4/S; the band has canonical
    # plain area 2*delta
    return AdmissibleBand(
        wedge=w,
        delta=delta,
        map=geometry.canonical_map(w.triangle()),
        region_area=delta * w.s / 2.0,
    )


def chord_endpoints_canonical(t: float, tau: float) -> tuple[Point, Point]:
    """P and R: the canonical chord y = 2tx - t^2 + tau meeting the sides
    through (-1,1)-(0,-1) and (1,1)-(0,-1). Requires |t| < 1."""
    xp = (t * t - tau - 1.0) / (2.0 * (t + 1.0))
    xr = (1.0 - t * t + tau) / (2.0 * (1.0 - t))
    return Point(xp, -2.0 * xp - 1.0), Point(xr, 2.0 * xr - 1.0)


def is_admissible(w: Wedge, q: Point, alpha: float
                  ) -> tuple[Point, Point] | None:
    """Band test for q; on acceptance returns the chord endpoints (p, r) in
    original coordinates, otherwise None. Rejection is a value, not an error."""
    band = band_for(w, alpha)
    qc = band.map.apply(q)
    t = qc.x
    tau = qc.y - t * t
    if abs(t) > 0.5 or abs(tau) > band.delta:
        return None
    pc, rc = chord_endpoints_canonical(t, tau)
    back = band.map.inverse()
    return back.apply(pc), back.apply(rc)


def sample_admissible(w: Wedge, alpha: float, rng: np.random.Generator
                      ) -> tuple[Point, Point, Point]:
    """Uniform draw (q, p, r) from the band region of w.

    t is uniform on [-1/2, 1/2] and tau on [-delta, delta]; affine maps
    preserve uniformity, so q is uniform on the band in original
    coordinates. The returned triple always passes is_admissible."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive to sample, got {alpha}")
    band = band_for(w, alpha)
    t = rng.uniform(-0.5, 0.5)
    tau = rng.uniform(-band.delta, band.delta)
    back = band.map.inverse()
    q = back.apply(Point(t, t * t + tau))
    pc, rc = chord_endpoints_canonical(t, tau)
    return q, back.apply(pc), back.apply(rc)


def admissible_area(w: Wedge, alpha: float) -> float:
    """Exact plain area of the band region in original coordinates:
    delta * S / 2."""
    return delta_for(alpha, w.s) * w.s / 2.0
