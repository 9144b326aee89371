import numpy as np
import pytest

from poissonchain.geometry import CANONICAL_TRIANGLE, Point, Triangle


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


@pytest.fixture
def canonical():
    return CANONICAL_TRIANGLE


def random_triangle(rng, span=2.0, min_shape=1e-2) -> Triangle:
    """A non-sliver random triangle; resamples until well conditioned."""
    while True:
        v = rng.uniform(-span, span, 6)
        d = ((v[2] - v[0]) * (v[5] - v[1]) - (v[3] - v[1]) * (v[4] - v[0]))
        scale = max(abs(v[i] - v[j]) for i, j in ((0, 2), (0, 4), (1, 3), (1, 5)))
        if abs(d) > min_shape * scale * scale:
            return Triangle(Point(v[0], v[1]), Point(v[2], v[3]),
                            Point(v[4], v[5]))
