"""Finite approximations to points, compact sets, functions on the unit
disk and ULAC functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..exact import (
    CarlesonRect,
    RationalDisk,
    RationalRect,
    rect_diameter_sq,
    sqrt_upper,
)
from .pieces import DomainPiece, piece_in_piece, polar_box_covered, validate_piece

__all__ = [
    "PointApprox",
    "CompactApprox",
    "FunctionApprox",
    "ULACApprox",
    "compact_diameter_bound",
    "union_diameter_sq",
    "points_diameter_sq",
    "function_approx_no_worse",
    "compact_approx_no_worse",
    "ulac_approx_no_worse",
    "ulac_lookup",
]


@dataclass(frozen=True)
class PointApprox:
    rect: RationalRect


@dataclass(frozen=True)
class CompactApprox:
    """Tight cover of a compact set by rational rectangles."""

    rects: tuple[RationalRect, ...]

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))
        if not self.rects:
            raise ValueError("a cover needs at least one rectangle")

    @cached_property
    def rect_set(self) -> frozenset[RationalRect]:
        return frozenset(self.rects)

    @cached_property
    def diameter_sq(self) -> Fraction:
        return points_diameter_sq([(p.x, p.y) for r in self.rects for p in r.corners()])

    def __len__(self) -> int:
        return len(self.rects)


@dataclass(frozen=True)
class FunctionApprox:
    """Pairs (U, V) with U an origin disk or Carleson rectangle whose closure
    lies in the unit disk, read as f[closure(U)] contained in V."""

    pairs: tuple[tuple[DomainPiece, RationalRect], ...]

    def __post_init__(self):
        pairs = tuple((u, v) for u, v in self.pairs)
        for u, v in pairs:
            validate_piece(u)
            if not isinstance(v, RationalRect):
                raise TypeError("values must be rational rectangles")
        object.__setattr__(self, "pairs", pairs)

    @cached_property
    def range_set(self) -> frozenset[RationalRect]:
        return frozenset(v for _, v in self.pairs)

    @cached_property
    def domain_set(self) -> frozenset:
        return frozenset(u for u, _ in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class ULACApprox:
    """Initial segment g(0), ..., g(L-1) of a ULAC function."""

    values: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("ULAC values are natural numbers")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)


def ulac_lookup(g: ULACApprox, m: int) -> int | None:
    if 0 <= m < len(g.values):
        return g.values[m]
    return None


def compact_diameter_bound(c: CompactApprox, bits: int = 20) -> Fraction:
    """Rational upper bound (grid 2**-bits) of the largest rectangle diameter."""
    return max(sqrt_upper(rect_diameter_sq(r), bits) for r in c.rects)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _d2(a, b) -> int:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def points_diameter_sq(points) -> Fraction:
    """Exact squared diameter of a finite set of rational points.

    Coordinates are scaled to integers over a common denominator; the
    diameter is attained between antipodal hull vertices (rotating calipers).
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) < 2:
        return Fraction(0)
    den = 1
    for x, y in pts:
        den = math.lcm(den, x.denominator, y.denominator)
    ipts = [(int(x * den), int(y * den)) for x, y in pts]
    hull = _hull(ipts)
    n = len(hull)
    if n == 1:
        return Fraction(0)
    if n == 2:
        return Fraction(_d2(hull[0], hull[1]), den * den)
    best = 0
    j = 1
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        while abs(_cross(a, b, hull[(j + 1) % n])) > abs(_cross(a, b, hull[j])):
            j = (j + 1) % n
        best = max(best, _d2(a, hull[j]), _d2(b, hull[j]))
    return Fraction(best, den * den)


def union_diameter_sq(c) -> Fraction:
    """Exact squared diameter of the union of the closed rectangles."""
    if isinstance(c, CompactApprox):
        return c.diameter_sq
    return points_diameter_sq([(p.x, p.y) for r in c for p in r.corners()])


def _covered_by(target: DomainPiece, candidates: list[DomainPiece]) -> bool:
    if any(piece_in_piece(target, u) for u in candidates):
        return True
    if isinstance(target, CarlesonRect):
        return polar_box_covered(target, candidates)
    return False


def function_approx_no_worse(a: FunctionApprox, b: FunctionApprox) -> bool:
    """Sufficient test that every function approximated by a is approximated
    by b; False means the test was inconclusive."""
    for u, v in b.pairs:
        candidates = [ui for ui, vi in a.pairs if v.contains_rect(vi)]
        if not candidates or not _covered_by(u, candidates):
            return False
    return True


def compact_approx_no_worse(a: CompactApprox, b: CompactApprox) -> bool:
    """Sufficient test that every compact set tightly covered by a is also
    tightly covered by b: each rectangle of a lies in one of b (so b covers)
    and each rectangle of b contains one of a (so each meets the set)."""
    if not all(any(rb.contains_rect(ra) for rb in b.rects) for ra in a.rects):
        return False
    return all(any(rb.contains_rect(ra) for ra in a.rects) for rb in b.rects)


def ulac_approx_no_worse(a: ULACApprox, b: ULACApprox) -> bool:
    """Every continuum admitting a as a ULAC initial segment admits b:
    b is no longer than a and pointwise no smaller (a larger g(k) is a
    weaker promise)."""
    return len(b.values) <= len(a.values) and all(vb >= va for va, vb in zip(a.values, b.values))
