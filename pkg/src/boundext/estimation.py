"""Length-area separation thresholds.

chi(s0, N0, r) = 2 pi N0 / (ln s0 - ln(1 - r)) and m = 2 sqrt(chi), with
rational enclosures.  The threshold only makes sense for s0 > 1 - r, where
the denominator is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import RationalInterval, as_rational, ln_enclosure, pi_interval, sqrt_lower, sqrt_upper

__all__ = ["MarginParams", "chi_enclosure", "margin_upper"]


@dataclass(frozen=True)
class MarginParams:
    s0: Fraction
    N0: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("s0", "N0", "r"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not 0 < self.s0 < 1:
            raise ValueError("s0 must lie in (0, 1)")
        if not 0 < self.r < 1:
            raise ValueError("r must lie in (0, 1)")
        if not self.N0 > 0:
            raise ValueError("N0 must be positive")


def _check_sign(p: MarginParams) -> None:
    # ln is strictly increasing, so the sign of the denominator is the sign
    # of s0 - (1 - r), decided exactly.
    if p.s0 == 1 - p.r:
        raise ZeroDivisionError("s0 = 1 - r makes ln s0 - ln(1 - r) vanish")
    if p.s0 < 1 - p.r:
        raise ValueError("sign error: s0 < 1 - r makes the margin denominator negative")


@lru_cache(maxsize=1024)
def chi_enclosure(p: MarginParams, k: int) -> RationalInterval:
    """Interval of width <= 2**-k containing chi(s0, N0, r)."""
    _check_sign(p)
    bits = k + 8
    while True:
        den = ln_enclosure(p.s0, bits) - ln_enclosure(1 - p.r, bits)
        if den.lo > 0:
            chi = (2 * p.N0) * pi_interval(bits) / den
            if chi.width <= Fraction(1, 1 << (k + 1)):
                return chi.rounded(k + 2)
        bits += 16


def _margin_at(p: MarginParams, k: int) -> Fraction:
    j = k + 4
    while True:
        chi = chi_enclosure(p, j)
        hi = sqrt_upper(4 * chi.hi, k + 4)
        if hi - sqrt_lower(4 * chi.lo, k + 4) <= Fraction(1, 1 << k):
            return hi
        j += 8


@lru_cache(maxsize=1024)
def margin_upper(p: MarginParams, k: int) -> Fraction:
    """Rational M >= m(s0, N0, r) with M - m <= 2**-k.

    Taking the minimum over all coarser precisions makes the bound
    non-increasing in k.
    """
    _check_sign(p)
    here = _margin_at(p, k)
    return here if k == 0 else min(here, margin_upper(p, k - 1))
