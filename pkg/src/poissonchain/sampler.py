"""Seeded randomness and spatial Poisson sampling over unions of wedges.

All randomness in the package derives from a master seed through
numpy SeedSequence spawn keys, so any (seed, stream) pair reproduces its
draw sequence exactly and distinct streams are statistically independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import Wedge
from .geometry import Point, Triangle


def rng_from(seed: int, *key: int) -> np.random.Generator:
    """Generator for stream `key` of the given master seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


@dataclass(frozen=True)
class SeededGenerator:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return rng_from(self.seed, self.stream)


def poisson_count(mean: float, rng: np.random.Generator) -> int:
    """One draw from Poisson(mean); numpy uses exact inversion for small
    means and a transformed-rejection method for large ones."""
    if not (mean >= 0 and math.isfinite(mean)):
        raise ValueError(f"mean must be finite and nonnegative, got {mean}")
    return int(rng.poisson(mean))


def uniform_in_triangle(tri: Triangle, rng: np.random.Generator,
                        size: int | None = None):
    """Uniform points in tri via the square-root parametrization
    (exactly uniform, no rejection loop)."""
    k = 1 if size is None else size
    u = rng.random((k, 2))
    r1 = np.sqrt(u[:, 0])
    r2 = u[:, 1]
    ax, ay = tri.a
    bx, by = tri.b
    cx, cy = tri.c
    x = ax + r1 * ((bx - ax) + r2 * (cx - bx))
    y = ay + r1 * ((by - ay) + r2 * (cy - by))
    if size is None:
        return Point(float(x[0]), float(y[0]))
    return np.column_stack([x, y])


@dataclass
class PoissonBatch:
    points: np.ndarray  # (k, 2)
    wedge_indices: np.ndarray  # (k,) index into the sampled wedge list
    intensity: float  # points per unit plain area
    region_area: float  # total plain area sampled

    def __len__(self) -> int:
        return self.points.shape[0]


def sample_in_wedges(intensity: float, wedges: list[Wedge],
                     rng: np.random.Generator) -> PoissonBatch:
    """One Poisson batch over the union of (non-overlapping) wedges.

    The count is Poisson(intensity * total plain area); each point picks a
    wedge with probability proportional to its plain area and is then
    uniform inside it, which is exactly uniform over the union.
    """
    if intensity < 0 or not math.isfinite(intensity):
        raise ValueError(f"bad intensity {intensity}")
    plain = np.array([w.s / 2.0 for w in wedges])
    total = float(plain.sum())
    k = poisson_count(intensity * total, rng)
    if k == 0:
        return PoissonBatch(np.empty((0, 2)), np.empty(0, dtype=np.int64),
                            intensity, total)
    cum = np.cumsum(plain)
    u = rng.random((k, 3))
    idx = np.searchsorted(cum, u[:, 0] * total, side="right")
    np.minimum(idx, len(wedges) - 1, out=idx)
    verts = np.array([(w.c_prev.x, w.c_prev.y, w.apex.x, w.apex.y,
                       w.c_next.x, w.c_next.y) for w in wedges])
    v = verts[idx]
    r1 = np.sqrt(u[:, 1])
    r2 = u[:, 2]
    x = v[:, 0] + r1 * ((v[:, 2] - v[:, 0]) + r2 * (v[:, 4] - v[:, 2]))
    y = v[:, 1] + r1 * ((v[:, 3] - v[:, 1]) + r2 * (v[:, 5] - v[:, 3]))
    return PoissonBatch(np.column_stack([x, y]), idx, intensity, total)
