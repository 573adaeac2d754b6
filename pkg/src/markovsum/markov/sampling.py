"""Seeded pseudo-random rational parameter tuples for identity checking.

A tiny in-house linear congruential generator keeps runs byte-for-byte
reproducible across interpreter versions (the stdlib generator makes no
such promise for all helper methods).  Numerators and denominators are
drawn uniformly from a small documented range; tuples that would hit a
singular denominator of the target family are rejected and redrawn.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

# Parameters from Knuth's MMIX line; period 2^64.
_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg:
    """Deterministic 64-bit linear congruential generator."""

    def __init__(self, seed: int = 0):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & _MASK
        for _ in range(4):
            self._step()

    def _step(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state >> 16

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self._step() % (hi - lo + 1)

    def rational(self, max_num: int = 12, max_den: int = 12) -> Fraction:
        """Positive rational with numerator/denominator in [1, max]."""
        return Fraction(self.randint(1, max_num), self.randint(1, max_den))


def sample_parameter_tuples(count: int, seed: int = 0,
                            max_component: int = 9) -> Iterator[tuple[Fraction, ...]]:
    """Yield (a, b, c, d, q) tuples safe for the q-series certificate.

    All five entries are positive rationals with numerator and denominator
    in [1, max_component]; q is kept in (0, 1).  Tuples are rejected when a
    denominator factor of the certificate family could vanish on a small
    grid: c, d or t equal to a nonpositive power of q, or zero inputs.
    """
    rng = Lcg(seed)
    produced = 0
    while produced < count:
        a = rng.rational(max_component, max_component)
        b = rng.rational(max_component, max_component)
        c = rng.rational(max_component, max_component)
        d = rng.rational(max_component, max_component)
        num = rng.randint(1, max_component)
        den = rng.randint(1, max_component)
        if num >= den:
            continue
        q = Fraction(num, den)
        t = c * d / (a * b * q)
        if _hits_pole(c, q) or _hits_pole(d, q) or _hits_pole(t, q) or t == 1:
            continue
        produced += 1
        yield (a, b, c, d, q)


def _hits_pole(value: Fraction, q: Fraction, span: int = 64) -> bool:
    """True when value == q^-k for some 0 <= k < span."""
    probe = Fraction(1)
    for _ in range(span):
        if value == 1 / probe:
            return True
        probe *= q
    return False
