"""Rational points, rectangles, disks and Carleson rectangles, with exact
distance and containment predicates.

Distances are compared as squares so no predicate ever needs a square root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .interval import TWO_PI_LOWER, RationalInterval
from .rational import as_rational, is_bounded_by, pow2

__all__ = [
    "RationalPoint",
    "RationalRect",
    "RationalDisk",
    "CarlesonRect",
    "rect_distance_sq",
    "rect_diameter_sq",
    "neighborhood_distance_test",
    "point_rect_distance_sq",
    "rect_in_neighborhood",
    "rect_bounded_by",
    "union_bbox",
]


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def abs_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def dist_sq(self, other: "RationalPoint") -> Fraction:
        dx, dy = self.x - other.x, self.y - other.y
        return dx * dx + dy * dy


@dataclass(frozen=True)
class RationalRect:
    """Open rectangle (x_lo, x_hi) x (y_lo, y_hi)."""

    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError(f"degenerate rectangle {self}")

    @classmethod
    def from_intervals(cls, xs: RationalInterval, ys: RationalInterval) -> "RationalRect":
        return cls(xs.lo, xs.hi, ys.lo, ys.hi)

    @property
    def width(self) -> Fraction:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> Fraction:
        return self.y_hi - self.y_lo

    @property
    def center(self) -> RationalPoint:
        return RationalPoint((self.x_lo + self.x_hi) / 2, (self.y_lo + self.y_hi) / 2)

    def corners(self) -> tuple[RationalPoint, ...]:
        return (
            RationalPoint(self.x_lo, self.y_lo),
            RationalPoint(self.x_hi, self.y_lo),
            RationalPoint(self.x_hi, self.y_hi),
            RationalPoint(self.x_lo, self.y_hi),
        )

    def contains_point(self, p: RationalPoint) -> bool:
        return self.x_lo < p.x < self.x_hi and self.y_lo < p.y < self.y_hi

    def closure_contains_point(self, p: RationalPoint) -> bool:
        return self.x_lo <= p.x <= self.x_hi and self.y_lo <= p.y <= self.y_hi

    def contains_rect(self, other: "RationalRect") -> bool:
        """other is a subset of self (both open)."""
        return (
            self.x_lo <= other.x_lo
            and other.x_hi <= self.x_hi
            and self.y_lo <= other.y_lo
            and other.y_hi <= self.y_hi
        )

    def intersection(self, other: "RationalRect") -> "RationalRect | None":
        x_lo, x_hi = max(self.x_lo, other.x_lo), min(self.x_hi, other.x_hi)
        y_lo, y_hi = max(self.y_lo, other.y_lo), min(self.y_hi, other.y_hi)
        if x_lo < x_hi and y_lo < y_hi:
            return RationalRect(x_lo, x_hi, y_lo, y_hi)
        return None

    def expanded(self, delta: Fraction) -> "RationalRect":
        return RationalRect(self.x_lo - delta, self.x_hi + delta, self.y_lo - delta, self.y_hi + delta)

    def xs(self) -> RationalInterval:
        return RationalInterval(self.x_lo, self.x_hi)

    def ys(self) -> RationalInterval:
        return RationalInterval(self.y_lo, self.y_hi)

    def min_abs_sq(self) -> Fraction:
        """Squared distance from the origin to the closed rectangle."""
        return point_rect_distance_sq(RationalPoint(0, 0), self)

    def max_abs_sq(self) -> Fraction:
        return max(c.abs_sq() for c in self.corners())


@dataclass(frozen=True)
class RationalDisk:
    center: RationalPoint
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")

    @classmethod
    def origin(cls, radius) -> "RationalDisk":
        return cls(RationalPoint(Fraction(0), Fraction(0)), radius)

    @property
    def is_origin_centered(self) -> bool:
        return self.center.x == 0 and self.center.y == 0


@dataclass(frozen=True)
class CarlesonRect:
    """Polar box {r e^{i theta} : r1 < r < r2, theta1 < theta < theta2}."""

    r1: Fraction
    r2: Fraction
    theta1: Fraction
    theta2: Fraction

    def __post_init__(self):
        for name in ("r1", "r2", "theta1", "theta2"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not (0 < self.r1 < self.r2 < 1):
            raise ValueError(f"Carleson radii must satisfy 0 < r1 < r2 < 1, got {self.r1}, {self.r2}")
        if not self.theta1 < self.theta2:
            raise ValueError("Carleson angles must satisfy theta1 < theta2")
        # certified below 2*pi using a rational lower bound of 2*pi
        if not self.theta2 - self.theta1 < TWO_PI_LOWER:
            raise ValueError("Carleson angular width must be below 2*pi")

    @cached_property
    def angles(self) -> RationalInterval:
        return RationalInterval(self.theta1, self.theta2)


def _gap(a_lo, a_hi, b_lo, b_hi) -> Fraction:
    return max(Fraction(0), b_lo - a_hi, a_lo - b_hi)


def rect_distance_sq(a: RationalRect, b: RationalRect) -> Fraction:
    """Exact squared distance between the closures of a and b."""
    dx = _gap(a.x_lo, a.x_hi, b.x_lo, b.x_hi)
    dy = _gap(a.y_lo, a.y_hi, b.y_lo, b.y_hi)
    return dx * dx + dy * dy


def rect_diameter_sq(a: RationalRect) -> Fraction:
    return a.width * a.width + a.height * a.height


def point_rect_distance_sq(p: RationalPoint, r: RationalRect) -> Fraction:
    dx = max(Fraction(0), r.x_lo - p.x, p.x - r.x_hi)
    dy = max(Fraction(0), r.y_lo - p.y, p.y - r.y_hi)
    return dx * dx + dy * dy


def neighborhood_distance_test(a: RationalRect, m_a: int, b: RationalRect, m_b: int) -> bool:
    """Do the open 2**-m_a and 2**-m_b neighbourhoods of a and b meet?"""
    reach = pow2(-m_a) + pow2(-m_b)
    return rect_distance_sq(a, b) < reach * reach


def rect_in_neighborhood(inner: RationalRect, outer: RationalRect, m: int) -> bool:
    """inner is a subset of the open 2**-m neighbourhood of outer.

    The neighbourhood is convex and open, so it contains the open rectangle
    iff it contains the closure's corners in its closure.
    """
    r = pow2(-m)
    r2 = r * r
    return all(point_rect_distance_sq(c, outer) <= r2 for c in inner.corners())


def rect_bounded_by(r: RationalRect, m: int) -> bool:
    return all(is_bounded_by(v, m) for v in (r.x_lo, r.x_hi, r.y_lo, r.y_hi))


def union_bbox(rects) -> RationalRect:
    rects = list(rects)
    return RationalRect(
        min(r.x_lo for r in rects),
        max(r.x_hi for r in rects),
        min(r.y_lo for r in rects),
        max(r.y_hi for r in rects),
    )
