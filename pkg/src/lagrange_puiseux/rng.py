"""Seed-deterministic random polynomials for verification campaigns.

The generator is SplitMix64, written out here so that any implementation can
reproduce a campaign from its seed.  All arithmetic is modulo 2**64::

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

An integer in ``[lo, hi]`` is drawn by rejection: with ``n = hi - lo + 1``
and ``limit = 2**64 - (2**64 mod n)``, outputs ``x >= limit`` are discarded
and ``lo + (x mod n)`` is returned.

A random ``R`` consumes draws in this order: the degree ``d`` in
``[deg_min, deg_max]``; then ``r_1, ..., r_{d-1}`` in ``[-B, B]``; then
``r_d`` in ``[-B, B]``, redrawn until nonzero.  ``r_0`` is always 1.
Campaign case ``i`` uses the draws following those of case ``i - 1``.
"""

from __future__ import annotations

from .branches import RSpec

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` (inclusive)."""
        if hi < lo:
            raise ValueError("empty range")
        n = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % n


def random_rspec(rng: SplitMix64, deg_min: int, deg_max: int, bound: int) -> RSpec:
    """Integer-coefficient ``R`` with ``r_0 = 1`` and exact degree in ``[deg_min, deg_max]``."""
    if not 1 <= deg_min <= deg_max:
        raise ValueError("need 1 <= deg_min <= deg_max")
    if bound < 1:
        raise ValueError("coefficient bound must be positive")
    d = rng.randint(deg_min, deg_max)
    coeffs = [1] + [rng.randint(-bound, bound) for _ in range(d - 1)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-bound, bound)
    coeffs.append(lead)
    return RSpec(tuple(coeffs))


def random_rspecs(seed: int, cases: int, deg_min: int, deg_max: int, bound: int) -> list:
    rng = SplitMix64(seed)
    return [random_rspec(rng, deg_min, deg_max, bound) for _ in range(cases)]
