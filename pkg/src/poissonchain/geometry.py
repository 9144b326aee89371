"""Planar primitives: pseudo-scalar product, doubled areas, affine maps to the
canonical triangle, convexity predicates, and the chord-shrinkage bound.

Orientation convention: the doubled area of a triangle ABC is the
pseudo-scalar product AC x CB, which is +4 for the canonical triangle
A=(-1,1), B=(1,1), C=(0,-1). Degeneracy is decided with a scale-aware
tolerance (1e-12 times the squared bounding scale) rather than exact
arithmetic; every downstream acceptance check is statistical or
tolerance-based, so 64-bit floats are used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

try:
    from math import cbrt
except ImportError:  # math.cbrt is 3.11+
    _THIRD = 1.0 / 3.0

    def cbrt(x: float) -> float:
        # pow-based: relative error ~1e-15 over the ranges used here, far
        # inside every tolerance, and ~10x faster than scalar np.cbrt
        return x ** _THIRD if x >= 0.0 else -((-x) ** _THIRD)

DEGENERACY_REL_TOL = 1e-12
SEGMENT_DECAY = 399.0 / 400.0


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, factor: float) -> "Point":
        return Point(self.x * factor, self.y * factor)


def cross(u: Point, v: Point) -> float:
    """Pseudo-scalar product: the oriented parallelogram area u x v."""
    return u.x * v.y - u.y * v.x


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def doubled_area(a: Point, b: Point, c: Point) -> float:
    """Signed doubled area of triangle abc, positive when (a, b, c) follows
    the canonical orientation (AC x CB). Zero signals collinearity."""
    return (c.x - a.x) * (b.y - c.y) - (c.y - a.y) * (b.x - c.x)


def _bounding_scale(points: Iterable[Point]) -> float:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return max(max(xs) - min(xs), max(ys) - min(ys), 1e-300)


def is_degenerate(a: Point, b: Point, c: Point) -> bool:
    scale = _bounding_scale((a, b, c))
    return abs(doubled_area(a, b, c)) <= DEGENERACY_REL_TOL * scale * scale


@dataclass(frozen=True)
class Triangle:
    """Ordered triangle (a, b, c). Where a chain is involved, a is the chain
    start, b the chain end, and c the apex."""

    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        for p in (self.a, self.b, self.c):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"non-finite vertex {p}")
        if is_degenerate(self.a, self.b, self.c):
            raise ValueError(f"degenerate triangle {self.a}, {self.b}, {self.c}")

    @property
    def doubled_area(self) -> float:
        return doubled_area(self.a, self.b, self.c)

    @property
    def plain_area(self) -> float:
        return abs(self.doubled_area) / 2.0

    @property
    def longest_side(self) -> float:
        return max(dist(self.a, self.b), dist(self.b, self.c), dist(self.c, self.a))

    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)


CANON_A = Point(-1.0, 1.0)
CANON_B = Point(1.0, 1.0)
CANON_C = Point(0.0, -1.0)
CANONICAL_TRIANGLE = Triangle(CANON_A, CANON_B, CANON_C)  # doubled area +4


@dataclass(frozen=True)
class AffineMap:
    """x' = m00*x + m01*y + tx, y' = m10*x + m11*y + ty."""

    m00: float
    m01: float
    m10: float
    m11: float
    tx: float
    ty: float

    @property
    def det(self) -> float:
        return self.m00 * self.m11 - self.m01 * self.m10

    @property
    def matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    @property
    def translation(self) -> Point:
        return Point(self.tx, self.ty)

    def apply(self, p: Point) -> Point:
        return Point(
            self.m00 * p.x + self.m01 * p.y + self.tx,
            self.m10 * p.x + self.m11 * p.y + self.ty,
        )

    def inverse(self) -> "AffineMap":
        d = self.det
        if d == 0.0 or not math.isfinite(d):
            raise ValueError("affine map is not invertible")
        i00, i01 = self.m11 / d, -self.m01 / d
        i10, i11 = -self.m10 / d, self.m00 / d
        return AffineMap(
            i00, i01, i10, i11,
            -(i00 * self.tx + i01 * self.ty),
            -(i10 * self.tx + i11 * self.ty),
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """Map applying `other` first, then self."""
        return AffineMap(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
            self.m00 * other.tx + self.m01 * other.ty + self.tx,
            self.m10 * other.tx + self.m11 * other.ty + self.ty,
        )

    def coeffs(self) -> tuple[float, float, float, float, float, float]:
        return (self.m00, self.m01, self.tx, self.m10, self.m11, self.ty)


IDENTITY_MAP = AffineMap(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def affine_between(src: Triangle, dst: Triangle) -> AffineMap:
    """The unique affine map sending src.a/b/c to dst.a/b/c."""
    u = src.b - src.a
    v = src.c - src.a
    d = cross(u, v)
    big_u = dst.b - dst.a
    big_v = dst.c - dst.a
    m00 = (big_u.x * v.y - big_v.x * u.y) / d
    m01 = (big_v.x * u.x - big_u.x * v.x) / d
    m10 = (big_u.y * v.y - big_v.y * u.y) / d
    m11 = (big_v.y * u.x - big_u.y * v.x) / d
    return AffineMap(
        m00, m01, m10, m11,
        dst.a.x - (m00 * src.a.x + m01 * src.a.y),
        dst.a.y - (m10 * src.a.x + m11 * src.a.y),
    )


def canonical_map(w: Triangle) -> AffineMap:
    """Affine map sending (chain-start, chain-end, apex) of w to the
    canonical triangle (-1,1), (1,1), (0,-1). Its plain-area scale factor
    is 4 / |doubled_area(w)|."""
    return affine_between(w, CANONICAL_TRIANGLE)


def barycentric(tri: Triangle, p: Point) -> tuple[float, float, float]:
    """Barycentric coordinates (wa, wb, wc) of p with respect to tri."""
    u = tri.b - tri.a
    v = tri.c - tri.a
    w = p - tri.a
    d = cross(u, v)
    wb = cross(w, v) / d
    wc = cross(u, w) / d
    return (1.0 - wb - wc, wb, wc)


def strictly_inside(tri: Triangle, p: Point, margin: float = 1e-12) -> bool:
    wa, wb, wc = barycentric(tri, p)
    return wa > margin and wb > margin and wc > margin


def segment_param(a: Point, b: Point, p: Point) -> float:
    """Projection parameter t with p ~ a + t*(b - a)."""
    u = b - a
    den = u.x * u.x + u.y * u.y
    if den == 0.0:
        raise ValueError("zero-length segment")
    return ((p.x - a.x) * u.x + (p.y - a.y) * u.y) / den


def on_segment(a: Point, b: Point, p: Point, tol: float = 1e-9) -> bool:
    """p lies on segment [a, b] within tol * |ab| (distance and overshoot)."""
    u = b - a
    length = math.hypot(u.x, u.y)
    if length == 0.0:
        return dist(a, p) <= tol
    t = segment_param(a, b, p)
    if t < -tol or t > 1.0 + tol:
        return False
    foot = Point(a.x + t * u.x, a.y + t * u.y)
    return dist(foot, p) <= tol * length


def is_strictly_convex(chain: Sequence[Point], rel_tol: float = 1e-12) -> bool:
    """True iff every consecutive turn has the same strict sign.

    The turn at an interior vertex is cross(p1-p0, p2-p1); "strict" means the
    magnitude exceeds rel_tol * |p1-p0| * |p2-p1|, so the test is invariant
    under global scaling.
    """
    if len(chain) < 3:
        raise ValueError("need at least 3 points")
    sign = 0
    for p0, p1, p2 in zip(chain, chain[1:], chain[2:]):
        u = p1 - p0
        v = p2 - p1
        c = cross(u, v)
        floor = rel_tol * math.hypot(u.x, u.y) * math.hypot(v.x, v.y)
        if abs(c) <= floor:
            return False
        s = 1 if c > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def line_intersection(p1: Point, d1: Point, p2: Point, d2: Point) -> Point:
    """Intersection of lines p1 + s*d1 and p2 + u*d2."""
    den = cross(d1, d2)
    if den == 0.0:
        raise ValueError("parallel lines")
    s = cross(p2 - p1, d2) / den
    return Point(p1.x + s * d1.x, p1.y + s * d1.y)


def menelaus_ratio_product(t: Triangle, p: Point, q: Point, r: Point) -> float:
    """Unsigned Menelaus product (AQ/QD)(DR/RC)(CP/PA) for the transversal
    P, Q, R of triangle ACD, where D is the intersection of line AQ with
    line BC. Equals 1 for any valid configuration."""
    a, b, c = t.a, t.b, t.c
    d = line_intersection(a, q - a, b, c - b)
    return (
        (dist(a, q) / dist(q, d))
        * (dist(d, r) / dist(r, c))
        * (dist(c, p) / dist(p, a))
    )


def segment_bound_check(t: Triangle, p: Point, q: Point, r: Point) -> bool:
    """Chord-shrinkage bound: with P on side AC, R on side BC, Q on [P, R],
    and the ratios AP:AC, PQ:PR, BR:BC all in [1/8, 7/8], every one of
    |AP|, |PQ|, |QR|, |RB|, |AQ|, |QB| is at most (399/400) * m, where m is
    the longest side of t.

    Raises ValueError when a precondition fails (reported distinctly from a
    bound failure, which returns False).
    """
    a, b, c = t.a, t.b, t.c
    if not on_segment(a, c, p):
        raise ValueError("P is not on side AC")
    if not on_segment(b, c, r):
        raise ValueError("R is not on side BC")
    if not on_segment(p, r, q):
        raise ValueError("Q is not on segment PR")
    lo, hi = 1.0 / 8.0 - 1e-12, 7.0 / 8.0 + 1e-12
    for name, ratio in (
        ("AP:AC", segment_param(a, c, p)),
        ("PQ:PR", segment_param(p, r, q)),
        ("BR:BC", segment_param(b, c, r)),
    ):
        if not (lo <= ratio <= hi):
            raise ValueError(f"ratio {name}={ratio} outside [1/8, 7/8]")
    bound = SEGMENT_DECAY * t.longest_side + 1e-12
    lengths = (
        dist(a, p), dist(p, q), dist(q, r),
        dist(r, b), dist(a, q), dist(q, b),
    )
    return all(length <= bound for length in lengths)
