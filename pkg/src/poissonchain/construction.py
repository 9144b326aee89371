"""The inductive construction: decrement budgets, the Poisson-or-fallback
choice of the insertion point, the run loop, and the circle-of-wedges
assembly of a single globally convex curve.

Step n samples a Poisson batch of intensity w_{q_n} over the current wedge
union (q_n the n-th prime power). If any batch point passes the band
admissibility test at budget a_n one is inserted (a hit); otherwise a wedge
is picked proportionally to its admissible area and a band point sampled
there (a miss). Every accepted step therefore decrements the affine length
by at most a_n, which bounds ell_N below by ell_1 times the deterministic
product prod(1 - a_k / ell_k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .chain import InscribedChainPair, InsertionError, initial_pair
from .geometry import SEGMENT_DECAY, Point, Triangle, is_strictly_convex
from .pseudolattice import PrimePower, intensity, prime_power_seq
from .sampler import poisson_count, rng_from

DECREMENT_FLOOR = -1e-12
DECREMENT_SLACK = 1e-9


class ConstructionError(RuntimeError):
    """A step violated an internal invariant; the trial is aborted."""

    def __init__(self, step_index: int, message: str, wedge: int | None = None):
        self.step_index = step_index
        self.wedge = wedge
        where = f"step {step_index}" if wedge is None \
            else f"wedge {wedge}, step {step_index}"
        super().__init__(f"{where}: {message}")


def a_schedule(n: int, ell: float) -> float:
    """Decrement budget a_n: ell/2 for n <= 2, else
    2 * ell / (n * ln(n)^(3/2)). Natural logarithm; the base only shifts
    constants."""
    if n < 1:
        raise ValueError(f"step index must be >= 1, got {n}")
    if ell < 0:
        raise ValueError(f"ell must be nonnegative, got {ell}")
    if n <= 2:
        return 0.5 * ell
    return 2.0 * ell / (n * math.log(n) ** 1.5)


@dataclass(frozen=True)
class StepRecord:
    n: int
    q: PrimePower
    w: float  # intensity actually used (equals J2(q) unless overridden)
    poisson_count: int
    admissible_count: int
    hit: bool
    wedge_slot: int
    decrement: float
    exact_s_n: float  # total admissible (band) area at budget a_n
    ell_after: float


@dataclass
class RunSummary:
    seed: int
    stream: tuple[int, ...]
    start: int
    horizon: int
    steps: list[StepRecord]
    final: dict  # pair snapshot
    hit_count: dict[int, int]  # prime power value -> hits
    ell_trajectory: list[float]  # ell before step `start`, then after each step


class ProbeResult(NamedTuple):
    poisson_count: int
    admissible_count: int
    exact_s: float
    w: float

    @property
    def miss(self) -> bool:
        return self.admissible_count == 0


def step(pair: InscribedChainPair, n: int, rng: np.random.Generator,
         *, w_override: float | None = None) -> StepRecord:
    """Execute step n on the pair in place.

    w_override replaces the prime-power intensity (test hook; 0 forces the
    fallback path). Raises ConstructionError on any invariant breach,
    leaving nothing silently inconsistent.
    """
    qp = prime_power_seq(n)
    w = float(intensity(qp.value).w) if w_override is None else float(w_override)
    alpha = a_schedule(n, pair.ell)
    plain_total, adm_total = pair.tables(alpha)
    if not (adm_total > 0.0 and math.isfinite(adm_total)):
        raise ConstructionError(n, f"admissible area degenerate: {adm_total}")
    k = poisson_count(w * plain_total, rng)
    u_place = rng.random((k, 3))
    u_select = float(rng.random())
    u_fb = rng.random(3)
    verts, fwd, inv, _s, delta, cum_plain, cum_adm = pair.arrays()
    hit, slot, adm_count, qx, qy, px, py, rx, ry = pair.kernel.resolve_step(
        verts, fwd, inv, delta, cum_plain, cum_adm, pair.n, k,
        u_place, u_select, u_fb)
    try:
        decrement, child_side, parent_side = pair.insert_slot(
            slot, Point(qx, qy), Point(px, py), Point(rx, ry))
    except InsertionError as exc:
        raise ConstructionError(n, f"insertion rejected: {exc}") from exc
    if not (DECREMENT_FLOOR <= decrement <= alpha + DECREMENT_SLACK):
        raise ConstructionError(
            n, f"decrement {decrement} outside [0, a_n={alpha}]")
    if child_side > SEGMENT_DECAY * parent_side + 1e-12:
        raise ConstructionError(
            n, f"child side {child_side} exceeds 399/400 of parent "
               f"{parent_side}")
    return StepRecord(
        n=n, q=qp, w=w, poisson_count=k, admissible_count=adm_count,
        hit=bool(hit), wedge_slot=slot, decrement=decrement,
        exact_s_n=adm_total, ell_after=pair.ell)


def miss_probe(pair: InscribedChainPair, n: int, rng: np.random.Generator,
               *, w_override: float | None = None) -> ProbeResult:
    """Sample the step-n batch against the frozen state without mutating it.

    The step misses exactly when no Poisson point is band-admissible, which
    happens with probability exp(-w * exact_s)."""
    qp = prime_power_seq(n)
    w = float(intensity(qp.value).w) if w_override is None else float(w_override)
    alpha = a_schedule(n, pair.ell)
    plain_total, adm_total = pair.tables(alpha)
    k = poisson_count(w * plain_total, rng)
    u_place = rng.random((k, 3))
    verts, fwd, _inv, _s, delta, cum_plain, _cum_adm = pair.arrays()
    adm = pair.kernel.count_admissible(
        verts, fwd, delta, cum_plain, pair.n, k, u_place)
    return ProbeResult(k, adm, adm_total, w)


def run_chain(root: Triangle, rng: np.random.Generator, horizon: int,
              *, start: int = 1, w_override: float | None = None,
              kernel=None) -> tuple[InscribedChainPair, list[StepRecord]]:
    """Steps start..horizon (inclusive) on a fresh pair in root."""
    if horizon < start:
        raise ValueError(f"horizon {horizon} is before start {start}")
    pair = initial_pair(root, kernel=kernel)
    records = []
    for n in range(start, horizon + 1):
        records.append(step(pair, n, rng, w_override=w_override))
    return pair, records


def run(config, trial: int = 0) -> RunSummary:
    """One seeded simulation per the config (single root triangle)."""
    root = config.triangle_obj()
    key = (trial, 0)
    rng = rng_from(config.seed, *key)
    pair, records = run_chain(root, rng, config.horizon)
    return _summarize(config.seed, key, 1, config.horizon, pair, records)


def _summarize(seed, key, start, horizon, pair, records) -> RunSummary:
    hit_count: dict[int, int] = {}
    for rec in records:
        hit_count[rec.q.value] = hit_count.get(rec.q.value, 0) + int(rec.hit)
    ell0 = records[0].ell_after + records[0].decrement if records else pair.ell
    return RunSummary(
        seed=seed, stream=tuple(key), start=start, horizon=horizon,
        steps=records, final=pair.snapshot(), hit_count=hit_count,
        ell_trajectory=[ell0] + [rec.ell_after for rec in records])


# -- the circle-of-wedges assembly ---------------------------------------


def circle_wedge_triangles(count: int, radius: float = 1.0,
                           center: tuple[float, float] = (0.0, 0.0)
                           ) -> list[Triangle]:
    """Tangent-chord triangles over chords A_i A_{i+1} of a circle, with
    A_i at angle pi/2^(i+1); the A_i converge monotonically to the point at
    angle 0. Interiors are pairwise disjoint (consecutive triangles share
    only a chord endpoint, where both are bounded by the same tangent)."""
    if count < 1:
        raise ValueError("need at least one wedge")
    cx, cy = center
    thetas = [math.pi / 2.0 ** (i + 1) for i in range(1, count + 2)]
    points = [Point(cx + radius * math.cos(t), cy + radius * math.sin(t))
              for t in thetas]
    triangles = []
    for i in range(count):
        phi = 0.5 * (thetas[i] + thetas[i + 1])
        half = 0.5 * (thetas[i] - thetas[i + 1])
        reach = radius / math.cos(half)
        apex = Point(cx + reach * math.cos(phi), cy + reach * math.sin(phi))
        triangles.append(Triangle(points[i], points[i + 1], apex))
    return triangles


@dataclass
class TheoremAssembly:
    curve: list[Point]  # concatenated inner chains, circle order
    per_n_hits: np.ndarray  # index n -> number of wedges whose step n hit
    summaries: list[RunSummary]
    triangles: list[Triangle]
    convex: bool
    start_offsets: list[int] = field(default_factory=list)


def pilot_start_offsets(config, trial: int = 0) -> list[int]:
    """Per-wedge start indices N_i: the smallest n whose estimated tail sum
    of miss probabilities exp(-w_{q_m} s_m), taken from a pilot run, drops
    below epsilon0 / 2^i. Clipped to [1, horizon]."""
    triangles = circle_wedge_triangles(
        config.wedges, config.circle_radius, tuple(config.circle_center))
    offsets = []
    for i, tri in enumerate(triangles, start=1):
        # stream component 997 keeps pilot draws off the main run's streams
        rng = rng_from(config.seed, trial, i, 997)
        _, records = run_chain(tri, rng, config.horizon)
        miss = np.array([math.exp(-rec.w * rec.exact_s_n) for rec in records])
        tails = np.cumsum(miss[::-1])[::-1]
        target = config.epsilon0 / 2.0 ** i
        below = np.nonzero(tails < target)[0]
        offsets.append(int(below[0]) + 1 if below.size else config.horizon)
    return offsets


def assemble_theorem_curve(config, trial: int = 0) -> TheoremAssembly:
    """Run one construction per circle wedge on independent streams and glue
    the inner chains, in circle order, into one strictly convex polyline.

    per_n_hits[n] counts the wedges whose step n was a hit (wedges that
    start after n contribute nothing at n)."""
    triangles = circle_wedge_triangles(
        config.wedges, config.circle_radius, tuple(config.circle_center))
    if config.start_offset_policy == "pilot":
        offsets = pilot_start_offsets(config, trial)
    else:
        offsets = [1] * config.wedges
    per_n = np.zeros(config.horizon + 1, dtype=np.int64)
    curve: list[Point] = []
    summaries = []
    for i, (tri, start) in enumerate(zip(triangles, offsets), start=1):
        key = (trial, i)
        rng = rng_from(config.seed, *key)
        try:
            pair, records = run_chain(tri, rng, config.horizon, start=start)
        except ConstructionError as exc:
            raise ConstructionError(exc.step_index, str(exc), wedge=i) from exc
        for rec in records:
            per_n[rec.n] += int(rec.hit)
        summaries.append(_summarize(
            config.seed, key, start, config.horizon, pair, records))
        inner = pair.inner_points()
        curve.extend(inner if not curve else inner[1:])
    return TheoremAssembly(
        curve=curve, per_n_hits=per_n, summaries=summaries,
        triangles=triangles, convex=is_strictly_convex(curve),
        start_offsets=offsets)


# -- census ----------------------------------------------------------------


@dataclass
class CensusReport:
    split_ages: list[int]  # steps survived by each wedge that was split
    alive_ages: list[int]  # censored ages of wedges alive at the end
    max_age: int

    def age_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for age in self.split_ages:
            hist[age] = hist.get(age, 0) + 1
        return hist


def wedge_split_census(summary: RunSummary) -> CensusReport:
    """Survival ages of every wedge ever created, replayed from the chosen
    slots (slot k is created by the k-th insertion; a split reuses the
    parent slot for one child and appends the other)."""
    born = {0: 0}
    split_ages = []
    for j, rec in enumerate(summary.steps, start=1):
        slot = rec.wedge_slot
        split_ages.append(j - born[slot])
        born[slot] = j
        born[j] = j
    total = len(summary.steps)
    alive_ages = [total - b for b in born.values()]
    ages = split_ages + alive_ages
    return CensusReport(split_ages, alive_ages, max(ages) if ages else 0)
