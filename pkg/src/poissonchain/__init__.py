"""Strictly convex chains accumulating points of Poisson pseudo-lattices.

Simulation laboratory for a randomized construction: an inner convex chain
is refined step by step, preferring insertion points drawn from spatial
Poisson processes whose intensities follow the prime-power schedule, so that
the limiting curve picks up points of every pseudo-lattice layer.
"""

from ._kernel import active_backend
from .geometry import Point, Triangle

__version__ = "0.1.0"

__all__ = ["Point", "Triangle", "active_backend", "__version__"]
