"""Empirical check of the miss-probability law exp(-w_{q_n} * s_n).

A run is advanced to each requested step index and frozen there; the step's
Poisson batch is then replayed many times against the frozen state. The
step misses (no admissible Poisson point) with probability exactly
exp(-w * s), s the total band area, because band admissibility thins the
batch to a Poisson count of mean w * s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..chain import initial_pair
from ..construction import miss_probe, step
from ..sampler import rng_from


@dataclass(frozen=True)
class MissRateRow:
    n: int
    exact_s: float
    w: float
    p_exact: float  # exp(-w * exact_s)
    empirical: float
    sigma: float  # binomial std dev of the empirical frequency
    replays: int

    @property
    def z(self) -> float:
        if self.sigma == 0.0:
            return 0.0 if self.empirical == self.p_exact else math.inf
        return (self.empirical - self.p_exact) / self.sigma


def estimate_miss_rate(config, n_list, replays: int = 2000,
                       w_override: float | None = None) -> list[MissRateRow]:
    """Miss-rate table for the frozen states at each n in n_list.

    Replays draw from streams (seed, 1, n, replay); the state-building run
    uses stream (seed, 0, 0), so replays never consume its draws.
    """
    targets = sorted(set(n_list))
    if targets[0] < 1:
        raise ValueError("step indices must be >= 1")
    root = config.triangle_obj()
    rng = rng_from(config.seed, 0, 0)
    pair = initial_pair(root)
    rows = []
    for n in range(1, targets[-1] + 1):
        if n == targets[len(rows)]:
            misses = 0
            probe = None
            for rep in range(replays):
                probe = miss_probe(pair, n, rng_from(config.seed, 1, n, rep),
                                   w_override=w_override)
                misses += probe.miss
            p = math.exp(-probe.w * probe.exact_s)
            rows.append(MissRateRow(
                n=n, exact_s=probe.exact_s, w=probe.w, p_exact=p,
                empirical=misses / replays,
                sigma=math.sqrt(p * (1.0 - p) / replays), replays=replays))
            if len(rows) == len(targets):
                break
        step(pair, n, rng, w_override=w_override)
    return rows
