"""The lemma-verification suite: every acceptance criterion as a seeded,
deterministic check. The same functions back the CLI `verify` subcommand and
the acceptance test module.

Report bodies (criteria, measured values, tolerances, verdicts) are
deterministic for a given config; runtimes are kept out of the body so two
identical invocations produce byte-identical bodies.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import chi2

from .. import admissible, geometry, pseudolattice
from ..chain import initial_pair, make_wedge
from ..config import ExperimentConfig
from ..construction import (a_schedule, assemble_theorem_curve, run,
                            run_chain, step)
from ..geometry import SEGMENT_DECAY, Point, Triangle
from ..sampler import rng_from, uniform_in_triangle
from .missrate import estimate_miss_rate
from .sweep import summaries_payload, sweep

CRITERIA = [
    "amgm_identity",
    "err_nonnegativity",
    "band_area_exact",
    "admissibility_soundness",
    "segment_bound",
    "affine_length_floor",
    "decrement_contract",
    "miss_probability_law",
    "theorem_trend",
    "number_theory",
    "poisson_sampler",
    "determinism",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: dict
    tolerance: dict
    runtime_s: float = 0.0
    detail: str = ""


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def body(self) -> dict:
        names = [r.name for r in self.results]
        if sorted(names) != sorted(CRITERIA) or len(set(names)) != len(names):
            raise ValueError(
                f"report must cover every criterion exactly once, got {names}")
        return {
            r.name: {
                "passed": r.passed,
                "measured": r.measured,
                "tolerance": r.tolerance,
                "detail": r.detail,
            }
            for r in self.results
        }

    def body_bytes(self) -> bytes:
        return json.dumps(self.body(), indent=2).encode()

    def to_json(self, path: str | Path) -> None:
        payload = {
            "body": self.body(),
            "runtimes": {r.name: r.runtime_s for r in self.results},
        }
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2) + "\n")

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            out.append(f"{status}  {r.name:26s} {r.detail}  [{r.runtime_s:.2f}s]")
        return out


def _random_triangles(rng: np.random.Generator, count: int,
                      span: float = 2.0, min_shape: float = 1e-3
                      ) -> np.ndarray:
    """(count, 6) vertex array of non-sliver triangles in [-span, span]^2."""
    out = np.empty((count, 6))
    need = np.ones(count, dtype=bool)
    while need.any():
        k = int(need.sum())
        cand = rng.uniform(-span, span, (k, 6))
        d = ((cand[:, 2] - cand[:, 0]) * (cand[:, 5] - cand[:, 1])
             - (cand[:, 3] - cand[:, 1]) * (cand[:, 4] - cand[:, 0]))
        scale = np.maximum(
            cand[:, ::2].max(axis=1) - cand[:, ::2].min(axis=1),
            cand[:, 1::2].max(axis=1) - cand[:, 1::2].min(axis=1))
        good = np.abs(d) > min_shape * scale * scale
        idx = np.nonzero(need)[0]
        out[idx[good]] = cand[good]
        need[idx[good]] = False
    return out


# -- criterion 1 -----------------------------------------------------------


def check_amgm(seed: int, samples: int = 100_000,
               tol_scale: float = 1e-12) -> CheckResult:
    """AM-GM expansion identity: residual <= tol_scale * max(1, x, y, z)."""
    t0 = time.perf_counter()
    rng = rng_from(seed, 101)
    x = rng.uniform(0.0, 10.0, samples)
    y = rng.uniform(0.0, 10.0, samples)
    z = rng.uniform(0.0, 10.0, samples)
    # exercise edge shapes: zeros and near-equal triples
    x[:100] = 0.0
    y[100:200] = z[100:200] = 0.0
    y[200:300] = x[200:300]
    z[200:300] = x[200:300] * (1 + 1e-9)
    a, b, c = np.cbrt(x), np.cbrt(y), np.cbrt(z)
    lhs = (x + y + z) / 3.0 - a * b * c
    rhs = (a + b + c) * ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2) / 6.0
    scale = np.maximum(1.0, np.maximum(x, np.maximum(y, z)))
    worst = float(np.max(np.abs(lhs - rhs) / scale))
    for i in range(0, samples, samples // 500):
        r = admissible.amgm_expansion_residual(float(x[i]), float(y[i]),
                                               float(z[i]))
        worst = max(worst, r / float(scale[i]))
    return CheckResult(
        "amgm_identity", worst <= tol_scale,
        {"max_scaled_residual": worst, "samples": samples},
        {"tol_scale": tol_scale},
        time.perf_counter() - t0,
        f"max residual {worst:.2e} (tol {tol_scale:g})")


# -- criterion 2 -----------------------------------------------------------


def check_err_nonneg(seed: int, samples: int = 100_000,
                     floor: float = -1e-12) -> CheckResult:
    """err >= floor over random P, Q, R configurations in random triangles."""
    t0 = time.perf_counter()
    rng = rng_from(seed, 102)
    tri = _random_triangles(rng, samples)
    ax, ay, bx, by, cx, cy = (tri[:, i] for i in range(6))
    u = rng.random((samples, 3))
    px = ax + u[:, 0] * (cx - ax)
    py = ay + u[:, 0] * (cy - ay)
    rx = bx + u[:, 1] * (cx - bx)
    ry = by + u[:, 1] * (cy - by)
    qx = px + u[:, 2] * (rx - px)
    qy = py + u[:, 2] * (ry - py)

    def darea(x0, y0, x1, y1, x2, y2):
        return (x2 - x0) * (y1 - y2) - (y2 - y0) * (x1 - x2)

    s = np.abs(darea(ax, ay, bx, by, cx, cy))
    s1 = np.abs(darea(ax, ay, px, py, qx, qy))
    s2 = np.abs(darea(bx, by, qx, qy, rx, ry))
    errs = 1.0 - np.cbrt(s1 / s) - np.cbrt(s2 / s)
    worst = float(errs.min())
    for i in range(0, samples, samples // 500):
        worst = min(worst, admissible.err(float(s[i]), float(s1[i]),
                                          float(s2[i])))
    return CheckResult(
        "err_nonnegativity", worst >= floor,
        {"min_err": worst, "samples": samples}, {"floor": floor},
        time.perf_counter() - t0,
        f"min err {worst:.2e} (floor {floor:g})")


# -- criterion 3 -----------------------------------------------------------


def check_band_area(seed: int, samples: int = 1_000_000,
                    eps_list=(0.01, 0.1, 1.0), nsigma: float = 3.0
                    ) -> CheckResult:
    """Exact band area delta*S/2 vs Monte Carlo membership counting.

    Membership probability inside the wedge is exactly delta (the area
    ratio), so the count is Binomial(samples, delta)."""
    t0 = time.perf_counter()
    rng = rng_from(seed, 103)
    zs = {}
    ok = True
    for eps in eps_list:
        v = _random_triangles(rng, 1)[0]
        tri = Triangle(Point(v[0], v[1]), Point(v[2], v[3]), Point(v[4], v[5]))
        wedge = make_wedge(tri.a, tri.c, tri.b)
        alpha = eps * geometry.cbrt(wedge.s)
        delta = admissible.delta_for(alpha, wedge.s)
        area = admissible.admissible_area(wedge, alpha)
        if not math.isclose(area, delta * wedge.s / 2.0, rel_tol=1e-15):
            ok = False
        pts = uniform_in_triangle(wedge.triangle(), rng, size=samples)
        f = geometry.canonical_map(wedge.triangle())
        t = f.m00 * pts[:, 0] + f.m01 * pts[:, 1] + f.tx
        yc = f.m10 * pts[:, 0] + f.m11 * pts[:, 1] + f.ty
        tau = yc - t * t
        inside = (np.abs(t) <= 0.5) & (np.abs(tau) <= delta)
        count = int(inside.sum())
        # bind the scalar API to the vectorized membership test
        for i in range(0, samples, samples // 200):
            got = admissible.is_admissible(
                wedge, Point(float(pts[i, 0]), float(pts[i, 1])), alpha)
            if (got is not None) != bool(inside[i]):
                ok = False
        sd = math.sqrt(samples * delta * (1.0 - delta))
        z = (count - samples * delta) / sd
        zs[f"eps={eps}"] = z
        if abs(z) > nsigma:
            ok = False
    return CheckResult(
        "band_area_exact", ok,
        {"z_scores": {k: float(v) for k, v in zs.items()}, "samples": samples},
        {"nsigma": nsigma},
        time.perf_counter() - t0,
        "z scores " + ", ".join(f"{k}: {v:+.2f}" for k, v in zs.items()))


# -- criteria 4 and 5 --------------------------------------------------------


RATIO_LO, RATIO_HI = 1.0 / 8.0, 7.0 / 8.0


def _six_ratios(e0, ap, e1, p, q, r):
    x1 = geometry.segment_param(e0, ap, p)  # AP:AC
    y1 = geometry.segment_param(p, r, q)  # PQ:PR
    br = geometry.segment_param(e1, ap, r)  # BR:BC
    return (x1, y1, 1.0 - br, 1.0 - x1, 1.0 - y1, br)


def check_soundness(seed: int, samples: int = 100_000,
                    decr_slack: float = 1e-9, ratio_tol: float = 1e-12,
                    api_samples: int = 5000) -> CheckResult:
    """Sampled (wedge, alpha, Q) triples: insert decrement <= alpha + slack
    and all six section ratios in [1/8, 7/8].

    Band points are drawn through each pair's stored canonical maps (the
    same construction the run loop uses); an api_samples-sized subsample
    additionally goes through admissible.sample_admissible to bind the two
    surfaces."""
    t0 = time.perf_counter()
    rng = rng_from(seed, 104)
    tris = _random_triangles(rng, samples)
    epss = np.exp(rng.uniform(math.log(1e-3), math.log(2.0), samples))
    draws = rng.random((samples, 2))
    worst_margin = -math.inf
    worst_ratio = 0.0
    ok = True
    api_every = max(1, samples // api_samples)
    for i in range(samples):
        v = tris[i]
        tri = Triangle(Point(v[0], v[1]), Point(v[2], v[3]), Point(v[4], v[5]))
        pair = initial_pair(tri, capacity=4)
        wedge = pair.slot_wedge(0)
        alpha = float(epss[i]) * geometry.cbrt(wedge.s)
        if i % api_every == 0:
            q, p, r = admissible.sample_admissible(wedge, alpha, rng)
        else:
            delta = admissible.delta_for(alpha, wedge.s)
            t = draws[i, 0] - 0.5
            tau = (2.0 * draws[i, 1] - 1.0) * delta
            pc, rc = admissible.chord_endpoints_canonical(t, tau)
            m = pair._inv[0]
            yq = t * t + tau
            q = Point(m[0] * (t + 1.0) + m[1] * (yq - 1.0) + m[2],
                      m[3] * (t + 1.0) + m[4] * (yq - 1.0) + m[5])
            p = Point(m[0] * (pc.x + 1.0) + m[1] * (pc.y - 1.0) + m[2],
                      m[3] * (pc.x + 1.0) + m[4] * (pc.y - 1.0) + m[5])
            r = Point(m[0] * (rc.x + 1.0) + m[1] * (rc.y - 1.0) + m[2],
                      m[3] * (rc.x + 1.0) + m[4] * (rc.y - 1.0) + m[5])
        ratios = _six_ratios(wedge.c_prev, wedge.apex, wedge.c_next, p, q, r)
        dev = max(max(RATIO_LO - t, t - RATIO_HI) for t in ratios)
        worst_ratio = max(worst_ratio, dev)
        decrement = pair.insert_slot(0, q, p, r)[0]
        worst_margin = max(worst_margin, decrement - alpha)
        if decrement > alpha + decr_slack or dev > ratio_tol:
            ok = False
    return CheckResult(
        "admissibility_soundness", ok,
        {"max_decrement_minus_alpha": worst_margin,
         "max_ratio_overshoot": worst_ratio, "samples": samples},
        {"decrement_slack": decr_slack, "ratio_tol": ratio_tol},
        time.perf_counter() - t0,
        f"max decr-alpha {worst_margin:.2e}, ratio overshoot "
        f"{worst_ratio:.2e}")


def check_segment_bound(seed: int, samples: int = 100_000,
                        run_horizon: int = 2000, tol: float = 1e-12
                        ) -> CheckResult:
    """Six chord lengths <= (399/400) m on sampled admissible configurations,
    and child wedge sides <= (399/400) of the parent on every split of a
    long run."""
    t0 = time.perf_counter()
    rng = rng_from(seed, 105)
    tris = _random_triangles(rng, samples)
    epss = np.exp(rng.uniform(math.log(1e-3), math.log(2.0), samples))
    ok = True
    worst = -math.inf
    for i in range(samples):
        v = tris[i]
        tri = Triangle(Point(v[0], v[1]), Point(v[2], v[3]), Point(v[4], v[5]))
        w = make_wedge(tri.a, tri.c, tri.b)
        alpha = float(epss[i]) * geometry.cbrt(w.s)
        q, p, r = admissible.sample_admissible(w, alpha, rng)
        lemma_tri = w.triangle()
        m = lemma_tri.longest_side
        lengths = (
            geometry.dist(lemma_tri.a, p), geometry.dist(p, q),
            geometry.dist(q, r), geometry.dist(r, lemma_tri.b),
            geometry.dist(lemma_tri.a, q), geometry.dist(q, lemma_tri.b))
        excess = max(lengths) - SEGMENT_DECAY * m
        worst = max(worst, excess)
        if excess > tol:
            ok = False
        if not geometry.segment_bound_check(lemma_tri, p, q, r):
            ok = False
    # lineage decay over one long run
    pair = initial_pair(ExperimentConfig().triangle_obj())
    ratios = []
    orig = pair.insert_slot

    def recording(slot, q, p, r):
        parent = float(pair._side[slot])
        out = orig(slot, q, p, r)
        ratios.append(out[1] / parent)
        return out

    pair.insert_slot = recording
    run_rng = rng_from(seed, 1050)
    for n in range(1, run_horizon + 1):
        step(pair, n, run_rng)
    max_ratio = max(ratios)
    if max_ratio > SEGMENT_DECAY + tol:
        ok = False
    return CheckResult(
        "segment_bound", ok,
        {"max_length_excess": worst, "max_lineage_ratio": max_ratio,
         "samples": samples, "run_horizon": run_horizon},
        {"bound": SEGMENT_DECAY, "tol": tol},
        time.perf_counter() - t0,
        f"max excess {worst:.2e}, lineage ratio {max_ratio:.6f} "
        f"<= {SEGMENT_DECAY}")


# -- criterion 6 -----------------------------------------------------------


def product_floor(n_final: int) -> float:
    """Numerically evaluated deterministic floor
    prod_{k<=2}(1/2) * prod_{k=3}^{n_final-1}(1 - 2/(k ln^{3/2} k))."""
    out = 0.25
    for k in range(3, n_final):
        out *= 1.0 - 2.0 / (k * math.log(k) ** 1.5)
    return out


def check_ell_floor(seed: int, seeds: int = 20, n_final: int = 5000,
                    slack: float = 1e-9) -> CheckResult:
    """ell_N / ell_1 >= product floor for every seeded run to N wedges."""
    t0 = time.perf_counter()
    floor = product_floor(n_final)
    root = ExperimentConfig().triangle_obj()
    worst = math.inf
    for i in range(seeds):
        pair, _ = run_chain(root, rng_from(seed, 106, i), n_final - 1)
        worst = min(worst, pair.ell / geometry.cbrt(abs(root.doubled_area)))
    return CheckResult(
        "affine_length_floor", worst >= floor - slack,
        {"min_ratio": worst, "floor": floor, "seeds": seeds,
         "n_final": n_final},
        {"slack": slack},
        time.perf_counter() - t0,
        f"min ell_N/ell_1 {worst:.6f} >= C* {floor:.6f}")


# -- criterion 7 -----------------------------------------------------------


def check_decrement_contract(seed: int, seeds: int = 5, horizon: int = 1000,
                             lo: float = -1e-12, hi_slack: float = 1e-9
                             ) -> CheckResult:
    """-1e-12 <= ell_n - ell_{n+1} <= a_n + 1e-9 on every step of every run
    (also asserted inside step() for every run anywhere)."""
    t0 = time.perf_counter()
    cfg = ExperimentConfig(horizon=horizon, seed=seed)
    worst_lo, worst_hi = math.inf, -math.inf
    ok = True
    for trial in range(seeds):
        summary = run(cfg, trial)
        ell_before = summary.ell_trajectory[0]
        for rec in summary.steps:
            budget = a_schedule(rec.n, ell_before)
            worst_lo = min(worst_lo, rec.decrement)
            worst_hi = max(worst_hi, rec.decrement - budget)
            if not (lo <= rec.decrement <= budget + hi_slack):
                ok = False
            if abs(ell_before - rec.decrement - rec.ell_after) > 1e-9:
                ok = False
            ell_before = rec.ell_after
    return CheckResult(
        "decrement_contract", ok,
        {"min_decrement": worst_lo, "max_decrement_minus_budget": worst_hi,
         "runs": seeds, "horizon": horizon},
        {"lo": lo, "hi_slack": hi_slack},
        time.perf_counter() - t0,
        f"min {worst_lo:.2e}, max over budget {worst_hi:.2e}")


# -- criterion 8 -----------------------------------------------------------


def check_miss_law(seed: int, states=(8, 30, 75, 150, 300),
                   replays: int = 2000, nsigma: float = 3.0) -> CheckResult:
    """Empirical miss rate at frozen states vs exp(-w * s) within 3 binomial
    standard deviations."""
    t0 = time.perf_counter()
    cfg = ExperimentConfig(seed=seed)
    rows = estimate_miss_rate(cfg, list(states), replays=replays)
    ok = all(abs(row.empirical - row.p_exact) <= nsigma * row.sigma + 1e-12
             for row in rows)
    return CheckResult(
        "miss_probability_law", ok,
        {"rows": [{"n": r.n, "p_exact": r.p_exact, "empirical": r.empirical,
                   "z": r.z} for r in rows],
         "replays": replays},
        {"nsigma": nsigma},
        time.perf_counter() - t0,
        "z " + ", ".join(f"n={r.n}: {r.z:+.2f}" for r in rows))


# -- criterion 9 -----------------------------------------------------------


def check_theorem_trend(seed: int, wedges: int = 8, horizon: int = 400,
                        trials: int = 50, early=(1, 50), late=(300, 400)
                        ) -> CheckResult:
    """Mean per-step hit count over the late window strictly exceeds the
    early window, and the assembled curve is strictly convex, every trial."""
    t0 = time.perf_counter()
    cfg = ExperimentConfig(mode="theorem", seed=seed, wedges=wedges,
                           horizon=horizon, trials=trials)
    total = np.zeros(horizon + 1)
    convex_all = True
    for trial in range(trials):
        asm = assemble_theorem_curve(cfg, trial)
        total += asm.per_n_hits
        convex_all = convex_all and asm.convex
    mean = total / trials
    early_mean = float(mean[early[0]:early[1] + 1].mean())
    late_mean = float(mean[late[0]:late[1] + 1].mean())
    ok = convex_all and late_mean > early_mean
    return CheckResult(
        "theorem_trend", ok,
        {"early_mean": early_mean, "late_mean": late_mean,
         "convex_all_trials": convex_all, "trials": trials,
         "wedges": wedges, "horizon": horizon},
        {"requirement": "late > early, all convex"},
        time.perf_counter() - t0,
        f"hits/step {early_mean:.3f} -> {late_mean:.3f}, convex={convex_all}")


# -- criterion 10 ----------------------------------------------------------


def _oracle_prime_powers(limit: int) -> list[int]:
    """Boolean-sieve oracle, independent of the package's factor sieve."""
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    primes = np.nonzero(sieve)[0]
    powers = []
    for p in primes:
        q = int(p)
        while q <= limit:
            powers.append(q)
            q *= int(p)
    return sorted(powers)


def check_number_theory(limit: int = 10_000) -> CheckResult:
    """Exact partition sum(w_d, d|n) = n^2 for n <= limit; the prime-power
    sequence matches a sieve oracle; w_q > q^2/2 on prime powers."""
    t0 = time.perf_counter()
    ok = all(pseudolattice.verify_partition(n) for n in range(1, limit + 1))
    oracle = _oracle_prime_powers(200_000)
    count = 0
    for k, q in enumerate(oracle[:limit], start=1):
        got = pseudolattice.prime_power_seq(k)
        if got.value != q or got.base ** got.exponent != q:
            ok = False
            break
        count = k
    powers_small = [q for q in oracle if q <= limit]
    margin = min(pseudolattice.intensity(q).w - q * q / 2.0
                 for q in powers_small)
    if margin <= 0:
        ok = False
    return CheckResult(
        "number_theory", ok,
        {"partition_limit": limit, "seq_checked": count,
         "min_w_minus_half_q2": margin},
        {"exact": True},
        time.perf_counter() - t0,
        f"partition exact to {limit}, seq ok to k={count}, "
        f"min w-q^2/2 = {margin:.1f}")


# -- criterion 11 ----------------------------------------------------------


def check_poisson_sampler(seed: int, draws: int = 100_000,
                          means=(0.5, 5.0, 50.0), nsigma: float = 3.0,
                          var_rel: float = 0.05, chi_alpha: float = 1e-3
                          ) -> CheckResult:
    """Count law (mean within 3 sigma, variance within 5%) and spatial
    chi-square uniformity in a triangle at the stated significance.

    Binning is a 4x4 grid in barycentric coordinates (an affine image of
    the triangle): 6 interior cells of probability 1/8 and 4 diagonal cells
    cut exactly in half, probability 1/16 each; df = 9.
    """
    t0 = time.perf_counter()
    ok = True
    stats = {}
    for mean in means:
        rng = rng_from(seed, 111, int(mean * 10))
        xs = rng.poisson(mean, draws)
        m = float(xs.mean())
        v = float(xs.var())
        if abs(m - mean) > nsigma * math.sqrt(mean / draws):
            ok = False
        if abs(v - mean) > var_rel * mean:
            ok = False
        stats[f"mean={mean}"] = {"sample_mean": m, "sample_var": v}
    tri = Triangle(Point(0.2, -0.3), Point(3.1, 0.4), Point(1.0, 2.5))
    rng = rng_from(seed, 112)
    pts = uniform_in_triangle(tri, rng, size=draws)
    u = tri.b - tri.a
    v = tri.c - tri.a
    d = geometry.cross(u, v)
    wx = pts[:, 0] - tri.a.x
    wy = pts[:, 1] - tri.a.y
    lb = np.clip((wx * v.y - wy * v.x) / d, 0.0, 1.0 - 1e-12)
    lc = np.clip((u.x * wy - u.y * wx) / d, 0.0, 1.0 - 1e-12)
    i = np.floor(4 * lb).astype(int)
    j = np.floor(4 * lc).astype(int)
    chi = 0.0
    for ci in range(4):
        for cj in range(4 - ci):
            p = 0.125 if ci + cj <= 2 else 0.0625
            observed = int(((i == ci) & (j == cj)).sum())
            expected = p * draws
            chi += (observed - expected) ** 2 / expected
    threshold = float(chi2.isf(chi_alpha, 9))
    if chi > threshold:
        ok = False
    stats["chi_square"] = {"statistic": float(chi), "threshold": threshold}
    return CheckResult(
        "poisson_sampler", ok, stats,
        {"nsigma": nsigma, "var_rel": var_rel, "chi_alpha": chi_alpha},
        time.perf_counter() - t0,
        f"chi2 {chi:.1f} < {threshold:.1f}")


# -- criterion 12 ----------------------------------------------------------


def check_determinism(seed: int, workdir: str | Path | None = None,
                      horizon: int = 60, trials: int = 2) -> CheckResult:
    """Two executions with identical config and seed produce identical CSV
    and JSON payloads (manifest timestamps excluded)."""
    import tempfile
    t0 = time.perf_counter()
    cfg = ExperimentConfig(mode="sweep", seed=seed, horizon=horizon,
                           trials=trials)
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        tmp = Path(tmp)
        blobs = []
        for tag in ("a", "b"):
            csv_path = tmp / tag / "sweep.csv"
            summaries = sweep(cfg, csv_path)
            payload = json.dumps(summaries_payload(summaries),
                                 indent=2).encode()
            blobs.append((csv_path.read_bytes(), payload))
        csv_equal = blobs[0][0] == blobs[1][0]
        json_equal = blobs[0][1] == blobs[1][1]
    ok = csv_equal and json_equal
    return CheckResult(
        "determinism", ok,
        {"csv_equal": csv_equal, "json_equal": json_equal,
         "horizon": horizon, "trials": trials},
        {"comparison": "byte"},
        time.perf_counter() - t0,
        f"csv={'==' if csv_equal else '!='} json="
        f"{'==' if json_equal else '!='}")


# -- the suite ---------------------------------------------------------------


def verify_lemma_suite(config: ExperimentConfig) -> Report:
    """Run every acceptance criterion at its stated size and tolerance.

    config.tolerance_overrides may override the headline tolerance knob of
    a check by name (e.g. {"amgm_identity": 0.0} to demonstrate a failure);
    individual check failures are recorded, never raised.
    """
    seed = config.seed
    over = config.tolerance_overrides

    def tol(name, default):
        return float(over.get(name, default))

    runners = [
        lambda: check_amgm(seed, tol_scale=tol("amgm_identity", 1e-12)),
        lambda: check_err_nonneg(seed,
                                 floor=-tol("err_nonnegativity", 1e-12)),
        lambda: check_band_area(seed, nsigma=tol("band_area_exact", 3.0)),
        lambda: check_soundness(
            seed, decr_slack=tol("admissibility_soundness", 1e-9)),
        lambda: check_segment_bound(seed, tol=tol("segment_bound", 1e-12)),
        lambda: check_ell_floor(seed,
                                slack=tol("affine_length_floor", 1e-9)),
        lambda: check_decrement_contract(
            seed, hi_slack=tol("decrement_contract", 1e-9)),
        lambda: check_miss_law(seed, nsigma=tol("miss_probability_law", 3.0)),
        lambda: check_theorem_trend(seed),
        lambda: check_number_theory(),
        lambda: check_poisson_sampler(seed,
                                      nsigma=tol("poisson_sampler", 3.0)),
        lambda: check_determinism(seed),
    ]
    report = Report()
    for runner in runners:
        report.results.append(runner())
    report.body()  # validates coverage
    return report
