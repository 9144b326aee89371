import math

import numpy as np
import pytest

from poissonchain import geometry as g
from poissonchain.geometry import (CANONICAL_TRIANGLE, AffineMap, Point,
                                   Triangle)
from conftest import random_triangle


def test_cross_examples():
    assert g.cross(Point(1, 0), Point(0, 1)) == 1
    assert g.cross(Point(1, 0), Point(1, 0)) == 0
    assert g.cross(Point(2, 1), Point(-1, 3)) == 7


def test_doubled_area_examples():
    assert g.doubled_area(Point(0, 0), Point(1, 0), Point(2, 0)) == 0
    assert CANONICAL_TRIANGLE.doubled_area == pytest.approx(4.0)
    assert abs(g.doubled_area(Point(0, 0), Point(1, 0), Point(0, 1))) == 1


def test_doubled_area_antisymmetric(rng):
    for _ in range(200):
        a, b, c = (Point(*rng.uniform(-3, 3, 2)) for _ in range(3))
        s = g.doubled_area(a, b, c)
        assert g.doubled_area(b, a, c) == pytest.approx(-s, abs=1e-12)
        assert g.doubled_area(a, c, b) == pytest.approx(-s, abs=1e-12)


def test_doubled_area_affine_covariant(rng):
    for _ in range(200):
        m = AffineMap(*rng.uniform(-2, 2, 6))
        if abs(m.det) < 1e-3:
            continue
        a, b, c = (Point(*rng.uniform(-3, 3, 2)) for _ in range(3))
        lhs = g.doubled_area(m.apply(a), m.apply(b), m.apply(c))
        rhs = m.det * g.doubled_area(a, b, c)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


def test_triangle_rejects_degenerate():
    with pytest.raises(ValueError):
        Triangle(Point(0, 0), Point(1, 1), Point(2, 2))
    with pytest.raises(ValueError):
        Triangle(Point(0, 0), Point(1, 0), Point(2, math.nan))


def test_canonical_map_is_identity_on_canonical():
    m = g.canonical_map(CANONICAL_TRIANGLE)
    for p in CANONICAL_TRIANGLE.vertices():
        q = m.apply(p)
        assert q.x == pytest.approx(p.x, abs=1e-12)
        assert q.y == pytest.approx(p.y, abs=1e-12)


def test_canonical_map_example():
    tri = Triangle(Point(0, 0), Point(4, 0), Point(2, -4))
    m = g.canonical_map(tri)
    assert m.apply(Point(2, -4)) == pytest.approx((0.0, -1.0), abs=1e-12)
    assert m.apply(Point(0, 0)) == pytest.approx((-1.0, 1.0), abs=1e-12)
    assert m.apply(Point(4, 0)) == pytest.approx((1.0, 1.0), abs=1e-12)
    # plain-area scale factor 4 / |S|
    assert abs(m.det) == pytest.approx(4.0 / abs(tri.doubled_area), rel=1e-12)


def test_canonical_map_roundtrip(rng):
    for _ in range(300):
        tri = random_triangle(rng)
        m = g.canonical_map(tri)
        back = m.inverse()
        for p in tri.vertices():
            q = back.apply(m.apply(p))
            assert math.hypot(q.x - p.x, q.y - p.y) <= 1e-9


def test_affine_compose_inverse(rng):
    for _ in range(100):
        m = AffineMap(*rng.uniform(-2, 2, 6))
        if abs(m.det) < 1e-3:
            continue
        ident = m.compose(m.inverse())
        p = Point(*rng.uniform(-5, 5, 2))
        q = ident.apply(p)
        assert math.hypot(q.x - p.x, q.y - p.y) <= 1e-9


def test_is_strictly_convex_examples():
    assert g.is_strictly_convex([Point(0, 0), Point(1, 1), Point(2, 0)])
    assert not g.is_strictly_convex([Point(0, 0), Point(1, 0), Point(2, 0)])
    assert not g.is_strictly_convex(
        [Point(0, 0), Point(1, 1), Point(2, 1.999), Point(3, 3)])
    with pytest.raises(ValueError):
        g.is_strictly_convex([Point(0, 0), Point(1, 1)])


def test_on_segment_and_param():
    a, b = Point(0, 0), Point(2, 0)
    assert g.segment_param(a, b, Point(0.5, 0)) == pytest.approx(0.25)
    assert g.on_segment(a, b, Point(1, 0))
    assert g.on_segment(a, b, Point(1, 1e-11))
    assert not g.on_segment(a, b, Point(1, 1e-3))
    assert not g.on_segment(a, b, Point(3, 0))


def test_segment_bound_symmetric_canonical():
    t = CANONICAL_TRIANGLE
    assert g.segment_bound_check(t, Point(-0.5, 0), Point(0, 0),
                                 Point(0.5, 0))


def test_segment_bound_equilateral_midpoints():
    h = math.sqrt(3)
    t = Triangle(Point(-1, h), Point(1, h), Point(0, 0))
    p = Point(-0.5, h / 2)
    r = Point(0.5, h / 2)
    q = Point(0, h / 2)
    assert g.segment_bound_check(t, p, q, r)


def test_segment_bound_precondition_errors():
    t = CANONICAL_TRIANGLE
    with pytest.raises(ValueError):
        g.segment_bound_check(t, Point(5, 5), Point(0, 0), Point(0.5, 0))
    with pytest.raises(ValueError):
        # ratio AP:AC too small
        g.segment_bound_check(t, Point(-0.99, 0.98), Point(0, 0.9),
                              Point(0.99, 0.98))


def test_menelaus_identity_on_valid_configs(rng):
    for _ in range(1000):
        tri = random_triangle(rng)
        u = rng.uniform(1 / 8, 7 / 8)
        v = rng.uniform(1 / 8, 7 / 8)
        w = rng.uniform(1 / 8, 7 / 8)
        p = Point(tri.a.x + u * (tri.c.x - tri.a.x),
                  tri.a.y + u * (tri.c.y - tri.a.y))
        r = Point(tri.b.x + v * (tri.c.x - tri.b.x),
                  tri.b.y + v * (tri.c.y - tri.b.y))
        q = Point(p.x + w * (r.x - p.x), p.y + w * (r.y - p.y))
        assert g.menelaus_ratio_product(tri, p, q, r) == pytest.approx(
            1.0, rel=1e-9)


def test_segment_bound_property(rng):
    # every precondition-satisfying configuration obeys the bound
    for _ in range(20_000):
        tri = random_triangle(rng)
        u = rng.uniform(1 / 8, 7 / 8)
        w = rng.uniform(1 / 8, 7 / 8)
        v = rng.uniform(1 / 8, 7 / 8)
        p = Point(tri.a.x + u * (tri.c.x - tri.a.x),
                  tri.a.y + u * (tri.c.y - tri.a.y))
        r = Point(tri.b.x + v * (tri.c.x - tri.b.x),
                  tri.b.y + v * (tri.c.y - tri.b.y))
        q = Point(p.x + w * (r.x - p.x), p.y + w * (r.y - p.y))
        assert g.segment_bound_check(tri, p, q, r)


def test_point_arithmetic():
    p = Point(3, 4) - Point(1, 1)
    assert p == Point(2, 3)
    assert (Point(1, 2) + Point(3, 4)) == Point(4, 6)
    assert Point(1, 2).scaled(2.0) == Point(2, 4)
    assert g.dist(Point(0, 0), Point(3, 4)) == 5
