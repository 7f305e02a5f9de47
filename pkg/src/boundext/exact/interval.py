"""Closed rational intervals and rigorous enclosures of ln, pi, atan, sin
and cos.

Every transcendental routine sums a rational series and brackets the
truncation error with a proven remainder bound, then rounds the endpoints
outward to a dyadic grid so denominators stay small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rational import as_rational, ceil_dyadic, floor_dyadic, sqrt_lower, sqrt_upper

__all__ = [
    "RationalInterval",
    "Interval",
    "ln_enclosure",
    "pi_enclosure",
    "pi_interval",
    "atan_interval",
    "atan_enclosure",
    "arcsin_enclosure",
    "sin_enclosure",
    "cos_enclosure",
    "sin_interval",
    "cos_interval",
    "angle_enclosure",
    "TWO_PI_LOWER",
    "TWO_PI_UPPER",
]


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RationalInterval":
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def subset_of(self, other: "RationalInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def rounded(self, bits: int) -> "RationalInterval":
        """Outward rounding of both endpoints to multiples of 2**-bits."""
        return RationalInterval(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits))

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def _coerce(self, other) -> "RationalInterval":
        if isinstance(other, RationalInterval):
            return other
        return RationalInterval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        return RationalInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * RationalInterval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def square(self) -> "RationalInterval":
        if self.lo >= 0:
            return RationalInterval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return RationalInterval(self.hi * self.hi, self.lo * self.lo)
        return RationalInterval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))

    def sqrt(self, bits: int = 64) -> "RationalInterval":
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        return RationalInterval(sqrt_lower(self.lo, bits), sqrt_upper(self.hi, bits))


Interval = RationalInterval


# ---------------------------------------------------------------------------
# atan and pi


def _atan_small(x: Fraction, bits: int) -> RationalInterval:
    """atan(x) for |x| <= 1 via Euler's series.

    atan x = sum_n  4**n (n!)**2 / (2n+1)!  *  x**(2n+1) / (1+x**2)**(n+1)

    All terms share the sign of x and successive ratios are below
    y = x**2/(1+x**2) <= 1/2, so the tail after the last term t is at most
    t * y / (1 - y).
    """
    if x == 0:
        return RationalInterval.point(0)
    neg = x < 0
    x = -x if neg else x
    y = x * x / (1 + x * x)
    term = x / (1 + x * x)
    total = Fraction(0)
    eps = Fraction(1, 1 << (bits + 2))
    n = 0
    while True:
        total += term
        n += 1
        term = term * y * Fraction(2 * n, 2 * n + 1)
        tail = term / (1 - y)
        if tail < eps:
            break
    out = RationalInterval(total, total + tail).rounded(bits + 2)
    return -out if neg else out


@lru_cache(maxsize=64)
def pi_interval(bits: int) -> RationalInterval:
    """Machin: pi = 16 atan(1/5) - 4 atan(1/239), width <= 2**-bits."""
    a = _atan_small(Fraction(1, 5), bits + 6)
    b = _atan_small(Fraction(1, 239), bits + 6)
    return (16 * a - 4 * b).rounded(bits + 2)


def pi_enclosure(k: int) -> RationalInterval:
    """The dyadic cell of width 2**-(2k+2) containing pi.

    Cells at successive levels are nested, so enclosures refine
    monotonically; the level is fine enough that k >= 4 already sits strictly
    below 22/7.
    """
    level = 2 * k + 2
    bits = level + 8
    while True:
        enc = pi_interval(bits)
        lo_cell = floor_dyadic(enc.lo, level)
        hi_cell = floor_dyadic(enc.hi, level)
        if lo_cell == hi_cell and enc.lo > lo_cell:
            return RationalInterval(lo_cell, lo_cell + Fraction(1, 1 << level))
        bits += 16


TWO_PI_LOWER = 2 * pi_interval(60).lo
TWO_PI_UPPER = 2 * pi_interval(60).hi


def atan_enclosure(x, bits: int = 64) -> RationalInterval:
    x = as_rational(x)
    if abs(x) <= 1:
        return _atan_small(x, bits)
    half_pi = pi_interval(bits + 2) * Fraction(1, 2)
    inner = _atan_small(1 / x, bits + 2)
    out = half_pi - inner if x > 0 else -half_pi - inner
    return out.rounded(bits + 1)


def atan_interval(iv: RationalInterval, bits: int = 64) -> RationalInterval:
    """atan is increasing, so the image is bracketed by the endpoint images."""
    return RationalInterval(atan_enclosure(iv.lo, bits).lo, atan_enclosure(iv.hi, bits).hi)


def arcsin_enclosure(iv: RationalInterval, bits: int = 64) -> RationalInterval:
    """arcsin over an interval inside (-1, 1), as atan(x / sqrt(1 - x**2))."""
    if iv.lo <= -1 or iv.hi >= 1:
        raise ValueError("arcsin argument must lie strictly inside (-1, 1)")

    def ratio_bounds(x: Fraction) -> RationalInterval:
        root = RationalInterval.point(1 - x * x).sqrt(bits + 8)
        return RationalInterval.point(x) / root

    lo = atan_interval(ratio_bounds(iv.lo), bits).lo
    hi = atan_interval(ratio_bounds(iv.hi), bits).hi
    return RationalInterval(lo, hi)


def angle_enclosure(x, y, bits: int = 64) -> RationalInterval:
    """Enclosure of arg(x + iy) in (-pi, pi]; the point must not be 0."""
    x, y = as_rational(x), as_rational(y)
    if x == 0 and y == 0:
        raise ValueError("argument of zero")
    if x > 0:
        return atan_enclosure(y / x, bits)
    half_pi = pi_interval(bits + 2) * Fraction(1, 2)
    if x == 0:
        return half_pi if y > 0 else -half_pi
    pi = pi_interval(bits + 2)
    base = atan_enclosure(y / x, bits + 2)
    out = base + pi if y >= 0 else base - pi
    return out.rounded(bits + 1)


# ---------------------------------------------------------------------------
# ln


@lru_cache(maxsize=256)
def _atanh_series(x: Fraction, bits: int) -> RationalInterval:
    """atanh(x) for 0 <= x <= 1/3; tail after last term t bounded by t/(1-x^2)."""
    if x == 0:
        return RationalInterval.point(0)
    x2 = x * x
    power = x
    total = Fraction(0)
    eps = Fraction(1, 1 << (bits + 2))
    n = 0
    while True:
        total += power / (2 * n + 1)
        n += 1
        power *= x2
        tail = power / ((2 * n + 1) * (1 - x2))
        if tail < eps:
            break
    return RationalInterval(total, total + tail).rounded(bits + 2)


def ln_enclosure(q, k: int) -> RationalInterval:
    """Enclosure of ln q of width at most 2**-k.

    q = 2**e * r with 1 <= r < 2; ln q = e ln 2 + 2 atanh((r-1)/(r+1)) and
    ln 2 = 2 atanh(1/3). The reduction is symmetric in q -> 1/q whenever q
    is a power of two, which makes ln(1/2) the exact mirror of ln 2.
    """
    q = as_rational(q)
    if q <= 0:
        raise ValueError("logarithm of a non-positive rational")
    if q == 1:
        return RationalInterval.point(0)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    r = q / (Fraction(2) ** e)
    if r < 1:
        e -= 1
        r *= 2
    elif r >= 2:
        e += 1
        r /= 2
    extra = abs(e).bit_length() + 4
    ln2 = 2 * _atanh_series(Fraction(1, 3), k + extra)
    out = e * ln2
    if r != 1:
        out = out + 2 * _atanh_series((r - 1) / (r + 1), k + 4)
    return out.rounded(k + 2)


# ---------------------------------------------------------------------------
# sin / cos


def _taylor_sin_cos(x: Fraction, bits: int, which: str) -> RationalInterval:
    """Alternating Taylor series; the first omitted term bounds the error
    once the terms decrease, which holds after n > |x|."""
    eps = Fraction(1, 1 << (bits + 2))
    start = 1 if which == "sin" else 0
    term = x if which == "sin" else Fraction(1)
    total = Fraction(0)
    n = start
    while True:
        total += term
        # next term: -term * x^2 / ((n+1)(n+2))
        term = -term * x * x / ((n + 1) * (n + 2))
        n += 2
        if n > abs(x) + 1 and abs(term) < eps:
            break
    err = abs(term)
    return RationalInterval(total - err, total + err).rounded(bits + 2)


def sin_enclosure(x, bits: int = 64) -> RationalInterval:
    x = as_rational(x)
    out = _taylor_sin_cos(x, bits, "sin")
    return RationalInterval(max(out.lo, Fraction(-1)), min(out.hi, Fraction(1)))


def cos_enclosure(x, bits: int = 64) -> RationalInterval:
    x = as_rational(x)
    out = _taylor_sin_cos(x, bits, "cos")
    return RationalInterval(max(out.lo, Fraction(-1)), min(out.hi, Fraction(1)))


def _lipschitz_image(f, iv: RationalInterval, bits: int) -> RationalInterval:
    half = iv.width / 2
    centre = f(iv.mid, bits)
    lo = max(centre.lo - half, Fraction(-1))
    hi = min(centre.hi + half, Fraction(1))
    return RationalInterval(lo, hi).rounded(bits + 2)


def sin_interval(iv: RationalInterval, bits: int = 64) -> RationalInterval:
    """sin over an interval, using |sin'| <= 1 around the midpoint."""
    if iv.width == 0:
        return sin_enclosure(iv.lo, bits)
    return _lipschitz_image(sin_enclosure, iv, bits)


def cos_interval(iv: RationalInterval, bits: int = 64) -> RationalInterval:
    if iv.width == 0:
        return cos_enclosure(iv.lo, bits)
    return _lipschitz_image(cos_enclosure, iv, bits)
