"""Prime-power ordering and the intensities of the pseudo-lattice layers.

The layer for denominator n is a spatial Poisson process whose intensity is
the Jordan totient J2(n) = n^2 * prod_{p | n} (1 - 1/p^2), an exact integer.
Layers indexed by the divisors of n stack up to the plain intensity-n^2
process: sum_{d | n} J2(d) = n^2.

All arithmetic here is exact (Python integers); intensities are converted to
floating point only at the sampling boundary.
"""

from __future__ import annotations

import math
from typing import NamedTuple


class PrimePower(NamedTuple):
    value: int
    base: int
    exponent: int
    index: int  # 1-based rank in the ascending prime-power sequence


class Intensity(NamedTuple):
    n: int
    w: int  # expected points per unit plain area, exact


# Caches grow geometrically and are swapped in atomically; readers only ever
# see a fully built list, so concurrent lookups are safe.
_SPF_LIMIT = 0
_SPF: list[int] = []
_PP_SEQ: list[PrimePower] = []
_PP_LIMIT = 0


def _ensure_sieve(limit: int) -> None:
    global _SPF_LIMIT, _SPF
    if limit <= _SPF_LIMIT:
        return
    limit = max(limit, 2 * _SPF_LIMIT, 1024)
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for multiple in range(p * p, limit + 1, p):
                if spf[multiple] == multiple:
                    spf[multiple] = p
    _SPF, _SPF_LIMIT = spf, limit


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (prime, exponent) pairs, ascending."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _ensure_sieve(n)
    out = []
    while n > 1:
        p = _SPF[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def _extend_prime_powers(min_count: int) -> None:
    global _PP_SEQ, _PP_LIMIT
    limit = max(_PP_LIMIT, 64)
    while True:
        limit *= 2
        _ensure_sieve(limit)
        found = []
        for p in range(2, limit + 1):
            if _SPF[p] != p:
                continue
            q, e = p, 1
            while q <= limit:
                found.append((q, p, e))
                q *= p
                e += 1
        found.sort()
        if len(found) >= min_count:
            _PP_SEQ = [
                PrimePower(value, base, exp, i + 1)
                for i, (value, base, exp) in enumerate(found)
            ]
            _PP_LIMIT = limit
            return


def prime_power_seq(k: int) -> PrimePower:
    """The k-th smallest prime power (k >= 1): 2, 3, 4, 5, 7, 8, 9, 11, ..."""
    if k < 1:
        raise ValueError(f"prime power index must be >= 1, got {k}")
    if k > len(_PP_SEQ):
        _extend_prime_powers(k)
    return _PP_SEQ[k - 1]


def intensity(n: int) -> Intensity:
    """Exact layer intensity w_n = J2(n) = n^2 * prod_{p|n} (1 - 1/p^2).

    Computed purely in integer arithmetic: n^2 is divided by p^2 and
    multiplied by p^2 - 1 one prime at a time, which stays exact because
    p^2 | n^2 for every prime p | n. Python integers are unbounded, so the
    overflow clause of the contract is vacuous here.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    w = n * n
    for p, _ in factorize(n):
        w = (w // (p * p)) * (p * p - 1)
    return Intensity(n, w)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def verify_partition(n: int) -> bool:
    """Exact check that the layers indexed by divisors of n tile the
    intensity-n^2 process: sum_{d|n} w_d == n^2."""
    return sum(intensity(d).w for d in divisors(n)) == n * n
