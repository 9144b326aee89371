"""The inscribed chain pair: an inner strictly convex chain, an outer convex
chain it is inscribed in, the wedges between them, and the generalized
affine length sum(S_i^(1/3)) over the wedge doubled areas.

State lives in flat parallel arrays (one row per wedge slot) so the per-step
kernels can scan them; a slot never moves once created. A split overwrites
the parent slot with the first child and appends the second child as a new
slot, so after j insertions the slots are 0..j and the chain order is kept
in a linked next-slot array.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import geometry
from ._kernel import kernel as _default_kernel
from .geometry import Point, Triangle, cbrt

# ell is recomputed from scratch this often to bound floating-point drift
# from the incremental updates; at depth the ratio-form decrement and the
# cached shoelace areas disagree by ~2e-12 per step, so 256 keeps the cache
# within 1e-9 of the recomputed sum.
RESYNC_INTERVAL = 256

# q must sit on the chord [p, r] up to this relative distance; the chord is
# constructed analytically, so this only guards against corrupted inputs.
CHORD_REL_TOL = 1e-9


class Wedge(NamedTuple):
    c_prev: Point
    apex: Point
    c_next: Point
    s: float  # cached |doubled area|, > 0

    def triangle(self) -> Triangle:
        """As a (chain-start, chain-end, apex) triangle."""
        return Triangle(self.c_prev, self.c_next, self.apex)

    @property
    def longest_side(self) -> float:
        return self.triangle().longest_side


def make_wedge(c_prev: Point, apex: Point, c_next: Point) -> Wedge:
    s = abs(geometry.doubled_area(c_prev, apex, c_next))
    if geometry.is_degenerate(c_prev, apex, c_next):
        raise ValueError("degenerate wedge")
    return Wedge(c_prev, apex, c_next, s)


class InsertionError(ValueError):
    """An insertion violated a precondition; the pair was not mutated."""


def _amgm_gap(x: float, y: float, z: float) -> float:
    """(x+y+z)/3 - (xyz)^(1/3) via the cube-root square expansion, which is
    a sum of squares and therefore never negative in floating point."""
    a, b, c = cbrt(x), cbrt(y), cbrt(z)
    return (a + b + c) * ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2) / 6.0


def split_decrement(s: float, x1: float, y1: float, z1: float) -> float:
    """Affine-length decrement s^(1/3) - s1^(1/3) - s2^(1/3) evaluated from
    the section ratios x1 = AP:AC, y1 = PQ:PR, z1 = RC:BC.

    Algebraically identical to the cube-root form (s1/s and s2/s factor into
    the ratio triples), but numerically robust: for thin wedges the child
    shoelace areas lose up to ~8 digits to the absolute rounding noise of
    the vertex coordinates, while the ratios stay well conditioned. Written
    as a sum of AM-GM gaps, the result is nonnegative by construction.
    """
    x1 = min(max(x1, 0.0), 1.0)
    y1 = min(max(y1, 0.0), 1.0)
    z1 = min(max(z1, 0.0), 1.0)
    gap = _amgm_gap(x1, y1, z1) + _amgm_gap(1.0 - x1, 1.0 - y1, 1.0 - z1)
    return cbrt(s) * gap


def _slot_degenerate(c_prev: Point, apex: Point, c_next: Point) -> bool:
    # same formula as _write_slot's guard so prechecks and writes agree
    ux, uy = c_next.x - c_prev.x, c_next.y - c_prev.y
    vx, vy = apex.x - c_prev.x, apex.y - c_prev.y
    d = ux * vy - uy * vx
    scale = max(abs(ux), abs(uy), abs(vx), abs(vy))
    return abs(d) <= geometry.DEGENERACY_REL_TOL * scale * scale


class InscribedChainPair:
    """Mutable, single-owner pair of chains inside a root triangle."""

    def __init__(self, root: Triangle, kernel=None, capacity: int = 64):
        self.root = root
        self.kernel = kernel if kernel is not None else _default_kernel
        cap = max(capacity, 4)
        self._verts = np.empty((cap, 6))
        self._fwd = np.empty((cap, 6))
        self._inv = np.empty((cap, 6))
        self._s = np.empty(cap)
        self._delta = np.empty(cap)
        self._area = np.empty(cap)
        self._cum_plain = np.empty(cap)
        self._cum_adm = np.empty(cap)
        self._nxt = np.empty(cap, dtype=np.int64)
        self._born = np.empty(cap, dtype=np.int64)
        self._side = np.empty(cap)
        self.n = 0
        self._head = 0
        self.ell = 0.0
        self.insertions = 0
        self._since_sync = 0
        self._write_slot(0, root.a, root.c, root.b, born=0)
        self._nxt[0] = -1
        self.n = 1
        self.ell = cbrt(self._s[0])

    # -- slot bookkeeping -------------------------------------------------

    def _grow(self, need: int) -> None:
        cap = self._verts.shape[0]
        if need <= cap:
            return
        new = max(2 * cap, need)
        for name in ("_verts", "_fwd", "_inv"):
            arr = np.empty((new, 6))
            arr[:cap] = getattr(self, name)
            setattr(self, name, arr)
        for name, dtype in (
            ("_s", float), ("_delta", float), ("_area", float),
            ("_cum_plain", float), ("_cum_adm", float),
            ("_nxt", np.int64), ("_born", np.int64), ("_side", float),
        ):
            arr = np.empty(new, dtype=dtype)
            arr[:cap] = getattr(self, name)
            setattr(self, name, arr)

    def _write_slot(self, slot: int, c_prev: Point, apex: Point,
                    c_next: Point, born: int) -> None:
        # Inlined canonical map, anchored at c_prev: the stored rows encode
        #   canonical = M (p - origin) + (-1, 1)        (fwd)
        #   original  = M^-1 (c - (-1, 1)) + origin     (inv)
        # with row layout (m00, m01, ox, m10, m11, oy). Anchoring at a local
        # origin keeps every kernel product at wedge scale; with a global
        # translation the round trip loses ~|M| * |coords| / |canonical|
        # digits, which breaks thin wedges in large coordinate frames.
        ux = c_next.x - c_prev.x
        uy = c_next.y - c_prev.y
        vx = apex.x - c_prev.x
        vy = apex.y - c_prev.y
        d = ux * vy - uy * vx
        scale = max(abs(ux), abs(uy), abs(vx), abs(vy))
        if abs(d) <= geometry.DEGENERACY_REL_TOL * scale * scale:
            raise InsertionError("degenerate wedge")
        m00 = (2.0 * vy - uy) / d
        m01 = (ux - 2.0 * vx) / d
        m10 = 2.0 * uy / d
        m11 = -2.0 * ux / d
        det = m00 * m11 - m01 * m10
        self._verts[slot] = (c_prev.x, c_prev.y, apex.x, apex.y,
                             c_next.x, c_next.y)
        self._fwd[slot] = (m00, m01, c_prev.x, m10, m11, c_prev.y)
        self._inv[slot] = (m11 / det, -m01 / det, c_prev.x,
                           -m10 / det, m00 / det, c_prev.y)
        self._s[slot] = abs(d)
        self._born[slot] = born
        self._side[slot] = max(
            math.hypot(ux, uy), math.hypot(vx, vy),
            math.hypot(c_next.x - apex.x, c_next.y - apex.y))

    def slot_wedge(self, slot: int) -> Wedge:
        v = self._verts[slot]
        return Wedge(Point(v[0], v[1]), Point(v[2], v[3]), Point(v[4], v[5]),
                     float(self._s[slot]))

    def order(self) -> list[int]:
        """Slots in chain order (from A to B)."""
        out = []
        slot = self._head
        while slot != -1:
            out.append(slot)
            slot = int(self._nxt[slot])
        return out

    def wedges(self) -> list[Wedge]:
        return [self.slot_wedge(slot) for slot in self.order()]

    def wedge(self, i: int) -> Wedge:
        return self.slot_wedge(self.order()[i])

    def inner_points(self) -> list[Point]:
        """A = C_0, C_1, ..., C_{n-1}, B = C_n."""
        slots = self.order()
        v = self._verts
        first = slots[0]
        pts = [Point(v[first, 0], v[first, 1])]
        pts.extend(Point(v[slot, 4], v[slot, 5]) for slot in slots)
        return pts

    def outer_points(self) -> list[Point]:
        """A, D_1, ..., D_n, B."""
        slots = self.order()
        v = self._verts
        first, last = slots[0], slots[-1]
        pts = [Point(v[first, 0], v[first, 1])]
        pts.extend(Point(v[slot, 2], v[slot, 3]) for slot in slots)
        pts.append(Point(v[last, 4], v[last, 5]))
        return pts

    # -- kernel-facing views ----------------------------------------------

    def tables(self, alpha: float) -> tuple[float, float]:
        """(total plain area, total admissible area) for the current state,
        filling the per-slot delta/area/cumulative buffers."""
        return self.kernel.step_tables(
            self._s, self.n, alpha, self._delta, self._area,
            self._cum_plain, self._cum_adm)

    def arrays(self):
        """Raw state views handed to the kernels."""
        return (self._verts, self._fwd, self._inv, self._s, self._delta,
                self._cum_plain, self._cum_adm)

    # -- the insertion -----------------------------------------------------

    def insert_slot(self, slot: int, q: Point, p: Point, r: Point
                    ) -> tuple[float, float, float]:
        """Split wedge `slot` at chord (p, q, r).

        Returns (decrement, max child longest side, parent longest side).
        Raises InsertionError without mutating on any precondition failure.
        """
        if not (0 <= slot < self.n):
            raise InsertionError(f"slot {slot} out of range")
        v = self._verts[slot]
        e0 = Point(v[0], v[1])
        ap = Point(v[2], v[3])
        e1 = Point(v[4], v[5])
        # Tolerances carry an absolute floor of ~1e-13 per unit coordinate:
        # points are stored in the global frame, so their placement noise
        # does not shrink with the wedge.
        coord_scale = max(1.0, abs(v[0]), abs(v[1]), abs(v[2]), abs(v[3]),
                          abs(v[4]), abs(v[5]))
        tol_p = max(CHORD_REL_TOL,
                    1e-13 * coord_scale / geometry.dist(e0, ap))
        tol_r = max(CHORD_REL_TOL,
                    1e-13 * coord_scale / geometry.dist(ap, e1))
        if not geometry.on_segment(e0, ap, p, tol_p):
            raise InsertionError("p is not on segment [c_prev, apex]")
        if not geometry.on_segment(ap, e1, r, tol_r):
            raise InsertionError("r is not on segment [apex, c_next]")
        chord = geometry.dist(p, r)
        if chord == 0.0:
            raise InsertionError("degenerate chord")
        tpar = geometry.segment_param(p, r, q)
        foot = Point(p.x + tpar * (r.x - p.x), p.y + tpar * (r.y - p.y))
        if geometry.dist(foot, q) > max(CHORD_REL_TOL * chord,
                                        1e-13 * coord_scale):
            raise InsertionError("q is not on the chord [p, r]")
        ux, uy = e1.x - e0.x, e1.y - e0.y
        vx, vy = ap.x - e0.x, ap.y - e0.y
        d = ux * vy - uy * vx
        wx, wy = q.x - e0.x, q.y - e0.y
        wb = (wx * vy - wy * vx) / d
        wc = (ux * wy - uy * wx) / d
        if min(wb, wc, 1.0 - wb - wc) <= 1e-12:
            raise InsertionError("q is not strictly inside the wedge")
        if _slot_degenerate(e0, p, q) or _slot_degenerate(q, r, e1):
            raise InsertionError("degenerate child wedge")
        x1 = geometry.segment_param(e0, ap, p)  # AP:AC
        z1 = 1.0 - geometry.segment_param(e1, ap, r)  # RC:BC
        decrement = split_decrement(float(self._s[slot]), x1, tpar, z1)
        if decrement < -1e-12:
            raise InsertionError(
                f"affine length increased by {-decrement} on insertion")

        parent_side = float(self._side[slot])
        self._grow(self.n + 1)
        new_slot = self.n
        self.insertions += 1
        self._write_slot(slot, e0, p, q, born=self.insertions)
        self._write_slot(new_slot, q, r, e1, born=self.insertions)
        self._nxt[new_slot] = self._nxt[slot]
        self._nxt[slot] = new_slot
        self.n += 1
        self.ell -= decrement
        self._since_sync += 1
        if self._since_sync >= RESYNC_INTERVAL:
            self.ell = self.kernel.ell_sum(self._s, self.n)
            self._since_sync = 0
        child_side = max(float(self._side[slot]), float(self._side[new_slot]))
        return decrement, child_side, parent_side

    def insert(self, i: int, q: Point, p: Point, r: Point) -> float:
        """Split the i-th wedge in chain order; returns the decrement."""
        slots = self.order()
        if not (0 <= i < len(slots)):
            raise InsertionError(f"wedge index {i} out of range")
        return self.insert_slot(slots[i], q, p, r)[0]

    # -- derived quantities --------------------------------------------

    def affine_length(self) -> float:
        """sum(S_i^(1/3)) recomputed from the cached wedge areas."""
        return self.kernel.ell_sum(self._s, self.n)

    def inner_convex(self, rel_tol: float = 1e-12) -> bool:
        pts = np.array(self.inner_points())
        u = np.diff(pts, axis=0)
        turns = u[:-1, 0] * u[1:, 1] - u[:-1, 1] * u[1:, 0]
        floor = rel_tol * np.hypot(u[:-1, 0], u[:-1, 1]) \
            * np.hypot(u[1:, 0], u[1:, 1])
        if not np.all(np.abs(turns) > floor):
            return False
        return bool(np.all(turns > 0) or np.all(turns < 0))

    def snapshot(self) -> dict:
        """Structured record of the pair (vertex lists + ell) for
        serialization and rendering."""
        return {
            "root": [[p.x, p.y] for p in self.root.vertices()],
            "n": self.n,
            "ell": self.ell,
            "inner": [[p.x, p.y] for p in self.inner_points()],
            "outer": [[p.x, p.y] for p in self.outer_points()],
            "wedge_s": [float(self._s[slot]) for slot in self.order()],
        }

    def check_invariants(self, rel_tol: float = 1e-9) -> None:
        """Full structural validation; test/debug use (O(n))."""
        slots = self.order()
        assert len(slots) == self.n, "chain order does not cover all slots"
        inner = self.inner_points()
        outer = self.outer_points()
        assert len(inner) == self.n + 1 and len(outer) == self.n + 2
        v = self._verts
        for k in range(1, len(slots)):
            a, b = slots[k - 1], slots[k]
            assert v[a, 4] == v[b, 0] and v[a, 5] == v[b, 1], \
                "consecutive wedges do not share an inner vertex"
        # each C_i on [D_i, D_{i+1}]: equivalently each wedge's endpoints lie
        # on the outer segments meeting at its apex
        for k, slot in enumerate(slots):
            c_prev = Point(v[slot, 0], v[slot, 1])
            apex = Point(v[slot, 2], v[slot, 3])
            c_next = Point(v[slot, 4], v[slot, 5])
            prev_anchor = outer[k]
            next_anchor = outer[k + 2]
            assert geometry.on_segment(prev_anchor, apex, c_prev, 1e-7), \
                f"inner vertex off outer chain before wedge {k}"
            assert geometry.on_segment(apex, next_anchor, c_next, 1e-7), \
                f"inner vertex off outer chain after wedge {k}"
        if self.n >= 2:
            assert self.inner_convex(), "inner chain is not strictly convex"
            assert geometry.is_strictly_convex(outer), \
                "outer chain is not strictly convex"
        for pt in inner + outer:
            wa, wb, wc = geometry.barycentric(self.root, pt)
            assert min(wa, wb, wc) > -1e-9, f"{pt} outside the root triangle"
        ell = self.affine_length()
        assert abs(self.ell - ell) <= rel_tol * max(1.0, abs(ell)), \
            "cached ell drifted from the wedge areas"


def initial_pair(root: Triangle, kernel=None,
                 capacity: int = 64) -> InscribedChainPair:
    """Pair at step 1: inner chain AB, outer chain ACB, one wedge (A, C, B)."""
    return InscribedChainPair(root, kernel=kernel, capacity=capacity)


def affine_length(pair: InscribedChainPair) -> float:
    return pair.affine_length()


def insert(pair: InscribedChainPair, i: int, q: Point, p: Point, r: Point
           ) -> tuple[InscribedChainPair, float]:
    """Split the i-th wedge (chain order) of the pair in place; returns the
    mutated pair and the affine-length decrement."""
    decrement = pair.insert(i, q, p, r)
    return pair, decrement
