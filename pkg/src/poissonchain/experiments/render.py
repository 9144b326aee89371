"""Deterministic SVG rendering of a pair snapshot: root triangle, inner
chain (solid), outer chain (dashed), optionally the admissible bands
(shaded parabola strips), viewport auto-fitted."""

from __future__ import annotations

from pathlib import Path

from .. import admissible, geometry
from ..geometry import Point, Triangle

BAND_SAMPLES = 25


def _f(x: float) -> str:
    return f"{x:.8g}"


def _pts(points) -> str:
    # SVG y grows downward; flip so the scene reads like the plane
    return " ".join(f"{_f(x)},{_f(-y)}" for x, y in points)


def _band_polygons(snapshot: dict, alpha: float) -> list[list[tuple[float, float]]]:
    inner = snapshot["inner"]
    outer = snapshot["outer"]
    polys = []
    for i in range(len(inner) - 1):
        c_prev = Point(*inner[i])
        c_next = Point(*inner[i + 1])
        apex = Point(*outer[i + 1])
        tri = Triangle(c_prev, c_next, apex)
        delta = admissible.delta_for(alpha, abs(tri.doubled_area))
        if delta <= 0:
            continue
        back = geometry.canonical_map(tri).inverse()
        ts = [-0.5 + k / (BAND_SAMPLES - 1) for k in range(BAND_SAMPLES)]
        top = [back.apply(Point(t, t * t + delta)) for t in ts]
        bottom = [back.apply(Point(t, t * t - delta)) for t in reversed(ts)]
        polys.append([(p.x, p.y) for p in top + bottom])
    return polys


def render_svg(snapshot: dict, path: str | Path,
               band_alpha: float | None = None, width: int = 640) -> Path:
    """Write the snapshot as an SVG file and return its path.

    band_alpha, when given, shades the band of admissible insertion points
    of every wedge at that decrement budget. Output bytes depend only on
    the snapshot and arguments.
    """
    root = [tuple(v) for v in snapshot["root"]]
    inner = [tuple(v) for v in snapshot["inner"]]
    outer = [tuple(v) for v in snapshot["outer"]]
    bands = _band_polygons(snapshot, band_alpha) if band_alpha else []

    everything = root + inner + outer + [p for poly in bands for p in poly]
    xs = [p[0] for p in everything]
    ys = [-p[1] for p in everything]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    x0, y0 = min(xs) - pad, min(ys) - pad
    w = max(xs) - min(xs) + 2 * pad
    h = max(ys) - min(ys) + 2 * pad
    stroke = 0.004 * max(w, h)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{_f(width * h / w)}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        f'<g fill="none" stroke-linejoin="round" stroke-linecap="round" '
        f'stroke-width="{_f(stroke)}">',
    ]
    for poly in bands:
        parts.append(f'<polygon points="{_pts(poly)}" fill="#c9d7ea" '
                     'stroke="none"/>')
    parts.append(f'<polygon points="{_pts(root)}" stroke="#333333"/>')
    parts.append(f'<polyline points="{_pts(outer)}" stroke="#777777" '
                 f'stroke-dasharray="{_f(3 * stroke)} {_f(2 * stroke)}"/>')
    parts.append(f'<polyline points="{_pts(inner)}" stroke="#b02428" '
                 f'stroke-width="{_f(1.5 * stroke)}"/>')
    parts.append('</g>')
    parts.append('</svg>')

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts) + "\n")
    return path
