"""Rational scalars: coercion, dyadic rounding, square-root bounds and the
bounded-rational lattice used to keep the configuration search finite."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Q",
    "as_rational",
    "floor_dyadic",
    "ceil_dyadic",
    "sqrt_upper",
    "sqrt_lower",
    "pow2",
    "is_bounded_by",
    "rationals_bounded_by",
    "bounded_floor",
    "bounded_ceil",
]

Q = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def pow2(e: int) -> Fraction:
    """2**e as an exact rational, for any integer e."""
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def floor_dyadic(x: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= x."""
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def _ceil_isqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def sqrt_upper(x: Fraction, bits: int = 20) -> Fraction:
    """Smallest p / 2**bits with (p / 2**bits)**2 >= x."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    # p**2 >= x * 4**bits  <=>  p**2 >= ceil(x * 4**bits)
    target = -((-x.numerator << (2 * bits)) // x.denominator)
    return Fraction(_ceil_isqrt(target), 1 << bits)


def sqrt_lower(x: Fraction, bits: int = 20) -> Fraction:
    """Largest p / 2**bits with (p / 2**bits)**2 <= x."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    target = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(math.isqrt(target), 1 << bits)


def is_bounded_by(x: Fraction, m: int) -> bool:
    """True iff x = n/d with n, d in {-m, ..., m}.

    Checking the reduced form suffices: any unreduced witness has a reduced
    form with smaller absolute numerator and denominator.
    """
    return abs(x.numerator) <= m and x.denominator <= m


def rationals_bounded_by(m: int) -> list[Fraction]:
    """Every rational n/d with n, d in {-m, ..., m}, d != 0, ascending."""
    if m < 1:
        raise ValueError("no admissible denominators for m < 1")
    return sorted({Fraction(n, d) for d in range(1, m + 1) for n in range(-m, m + 1)})


def _floor_den(x: Fraction, n: int) -> Fraction:
    """Largest p/q <= x with 1 <= q <= n (Stern-Brocot descent, batched)."""
    if x.denominator <= n:
        return x
    a, b = x.numerator // x.denominator, 1  # lower end a/b <= x
    c, d = a + 1, 1  # upper end c/d > x
    while True:
        # lower moves to (a + k c)/(b + k d) while staying <= x
        k = min((x * b - a) / (c - x * d), Fraction((n - b) // d))
        k = k.numerator // k.denominator
        if k > 0:
            a, b = a + k * c, b + k * d
        # upper moves to (c + k a)/(d + k b) while staying > x
        num, den = c - x * d, x * b - a
        j = -((-num.numerator * den.denominator) // (num.denominator * den.numerator)) - 1
        j = min(j, (n - d) // b)
        if j > 0:
            c, d = c + j * a, d + j * b
        if k <= 0 and j <= 0:
            return Fraction(a, b)


def bounded_floor(x: Fraction, m: int) -> Fraction:
    """Largest rational bounded by m that is <= x."""
    if m < 1:
        raise ValueError("no admissible denominators for m < 1")
    if x < 0:
        return -bounded_ceil(-x, m)
    if x >= m:
        return Fraction(m)
    if x <= 1:
        return _floor_den(x, m)
    # p/q <= x with p, q <= m  <=>  q/p >= 1/x, and q/p < 1 forces q < p
    return 1 / -_floor_den(-1 / x, m)


def bounded_ceil(x: Fraction, m: int) -> Fraction:
    """Smallest rational bounded by m that is >= x."""
    if m < 1:
        raise ValueError("no admissible denominators for m < 1")
    if x <= 0:
        return -bounded_floor(-x, m)
    if x > m:
        raise ValueError(f"{x} lies above every rational bounded by {m}")
    if x <= 1:
        return -_floor_den(-x, m)
    return 1 / _floor_den(1 / x, m)
