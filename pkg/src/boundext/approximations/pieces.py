"""Membership and containment predicates for domain pieces (origin disks
and Carleson rectangles).

Angular questions involve pi, so they are answered with interval
enclosures refined until certified; an uncertifiable "inside" answer is
reported as False, which is the sound direction for every caller.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from ..exact import (
    CarlesonRect,
    RationalDisk,
    RationalInterval,
    RationalPoint,
    RationalRect,
    angle_enclosure,
    cos_enclosure,
    pi_interval,
    sin_enclosure,
)

DomainPiece = Union[CarlesonRect, RationalDisk]

_BITS = (48, 96, 160)


def validate_piece(piece: DomainPiece) -> None:
    if isinstance(piece, CarlesonRect):
        return  # r2 < 1 enforced on construction
    if isinstance(piece, RationalDisk):
        if not piece.is_origin_centered:
            raise ValueError("disk pieces must be centred at the origin")
        if not piece.radius < 1:
            raise ValueError("disk piece closure must lie inside the unit disk")
        return
    raise TypeError(f"not a domain piece: {piece!r}")


def _two_pi_multiples(lo: Fraction, hi: Fraction, closed: bool) -> bool | None:
    """Is some 2*pi*j inside (lo, hi) (or [lo, hi] when closed)?

    Returns None when the enclosure cannot separate the endpoints."""
    for bits in _BITS:
        pi = pi_interval(bits)
        tp_lo, tp_hi = 2 * pi.lo, 2 * pi.hi
        j_min = int(lo // tp_hi) - 1
        j_max = int(hi // tp_lo) + 1
        undecided = False
        for j in range(j_min, j_max + 1):
            if j == 0:
                if (lo <= 0 <= hi) if closed else (lo < 0 < hi):
                    return True
                continue
            a, b = (j * tp_lo, j * tp_hi) if j > 0 else (j * tp_hi, j * tp_lo)
            if lo < a and b < hi:
                return True
            if b < lo or hi < a or (not closed and (b <= lo or hi <= a)):
                continue
            undecided = True
        if not undecided:
            return False
    return None


def angle_range_contains_zero(piece: CarlesonRect, closed: bool = False) -> bool:
    """Does the angular range meet the positive real axis (mod 2*pi)?"""
    got = _two_pi_multiples(piece.theta1, piece.theta2, closed)
    # undecided only when an endpoint sits within 2**-160 of 2*pi*j; report
    # "meets" for closures (conservative for disjointness claims) and
    # "misses" for open membership (conservative for containment claims)
    return closed if got is None else got


def real_axis_span(piece: DomainPiece, closed: bool = False) -> tuple[Fraction, Fraction] | None:
    """Radii r >= 0 with r on the positive real axis inside the piece.

    Returned as (lo, hi): open interval (lo, hi) for the open piece (lo may
    be a closed end at 0 for disks), closed [lo, hi] when closed=True."""
    if isinstance(piece, RationalDisk):
        return (Fraction(0), piece.radius)
    if angle_range_contains_zero(piece, closed):
        return (piece.r1, piece.r2)
    return None


def segment_covered(pieces, s: Fraction, r: Fraction) -> bool:
    """Do the open pieces cover the closed real segment [s, r], 0 <= s <= r?"""
    spans = []
    for p in pieces:
        span = real_axis_span(p)
        if span is not None:
            # a disk also contains the point 0 itself
            spans.append((span[0], span[1], isinstance(p, RationalDisk)))
    need = s  # smallest point not yet known to be covered
    while True:
        best = None
        for lo, hi, closed_lo in spans:
            if (lo < need or (closed_lo and lo <= need)) and hi > need:
                if best is None or hi > best:
                    best = hi
        if best is None:
            return False
        if best > r:
            return True
        need = best


def segment_meets_piece(piece: DomainPiece, s: Fraction, r: Fraction, closed_piece: bool = False) -> bool:
    """Does [s, r] on the positive real axis meet the piece (or its closure)?"""
    span = real_axis_span(piece, closed_piece)
    if span is None:
        return False
    lo, hi = span
    if isinstance(piece, RationalDisk):
        return s < hi or (closed_piece and s <= hi)
    if closed_piece:
        return lo <= r and s <= hi
    return lo < r and s < hi


@lru_cache(maxsize=4096)
def _sector_halfplanes(piece: CarlesonRect, bits: int):
    c1, s1 = cos_enclosure(piece.theta1, bits), sin_enclosure(piece.theta1, bits)
    c2, s2 = cos_enclosure(piece.theta2, bits), sin_enclosure(piece.theta2, bits)
    return c1, s1, c2, s2


def _narrow(piece: CarlesonRect) -> bool:
    return piece.theta2 - piece.theta1 < pi_interval(48).lo


def point_in_piece(piece: DomainPiece, p: RationalPoint) -> bool:
    a = p.abs_sq()
    if isinstance(piece, RationalDisk):
        return a < piece.radius * piece.radius
    if not (piece.r1 * piece.r1 < a < piece.r2 * piece.r2):
        return False
    for bits in _BITS:
        arg = angle_enclosure(p.x, p.y, bits)
        if _shifted_inside(arg, piece.theta1, piece.theta2, bits):
            return True
        if _shifted_outside(arg, piece.theta1, piece.theta2, bits):
            return False
    return False


def _shifted_inside(arg: RationalInterval, t1: Fraction, t2: Fraction, bits: int) -> bool:
    two_pi = 2 * pi_interval(bits)
    for j in range(-3, 4):
        shifted = arg + two_pi * j
        if t1 < shifted.lo and shifted.hi < t2:
            return True
    return False


def _shifted_outside(arg: RationalInterval, t1: Fraction, t2: Fraction, bits: int) -> bool:
    two_pi = 2 * pi_interval(bits)
    for j in range(-3, 4):
        shifted = arg + two_pi * j
        if not (shifted.hi <= t1 or t2 <= shifted.lo):
            return False
    return True


def rect_in_piece(rect: RationalRect, piece: DomainPiece, bits: int = 48) -> bool:
    """Certified rect subset of piece (False when uncertified)."""
    if isinstance(piece, RationalDisk):
        return rect.max_abs_sq() <= piece.radius * piece.radius
    if rect.max_abs_sq() > piece.r2 * piece.r2 or rect.min_abs_sq() < piece.r1 * piece.r1:
        return False
    if not _narrow(piece):
        return False
    c1, s1, c2, s2 = _sector_halfplanes(piece, bits)
    for c in rect.corners():
        # left of the ray at theta1 and right of the ray at theta2
        if (c.y * c1 - c.x * s1).lo < 0:
            return False
        if (c.y * c2 - c.x * s2).hi > 0:
            return False
    return True


def rect_angle_bounds(rect: RationalRect, bits: int = 64) -> tuple[Fraction, Fraction] | None:
    """Rational a1 <= a2 such that every point of the rectangle has an
    argument in [a1, a2] (up to multiples of 2 pi).

    None when the closure contains the origin.
    """
    if rect.min_abs_sq() == 0:
        return None
    flip = rect.x_lo < 0 and rect.y_lo <= 0 <= rect.y_hi
    corners = rect.corners()
    if flip:
        corners = [RationalPoint(-p.x, -p.y) for p in corners]
    encl = [angle_enclosure(p.x, p.y, bits) for p in corners]
    lo = min(e.lo for e in encl)
    hi = max(e.hi for e in encl)
    if flip:
        pi = pi_interval(bits)
        lo, hi = lo + pi.lo, hi + pi.hi
    return lo, hi


def rect_misses_piece(rect: RationalRect, piece: DomainPiece, bits: int = 48) -> bool:
    """Certified: the open rectangle and the piece are disjoint."""
    if isinstance(piece, RationalDisk):
        return rect.min_abs_sq() >= piece.radius * piece.radius
    if rect.min_abs_sq() >= piece.r2 * piece.r2 or rect.max_abs_sq() <= piece.r1 * piece.r1:
        return True
    bounds = rect_angle_bounds(rect, bits)
    if bounds is None:
        return False
    return _shifted_outside(RationalInterval(*bounds), piece.theta1, piece.theta2, bits)


def piece_in_piece(inner: DomainPiece, outer: DomainPiece) -> bool:
    """Sufficient test for closure(inner) subset of closure(outer)."""
    if isinstance(outer, RationalDisk):
        if isinstance(inner, RationalDisk):
            return inner.radius <= outer.radius
        return inner.r2 <= outer.radius
    if isinstance(inner, RationalDisk):
        return False
    return (
        outer.r1 <= inner.r1
        and inner.r2 <= outer.r2
        and outer.theta1 <= inner.theta1
        and inner.theta2 <= outer.theta2
    )


def polar_box_covered(target: CarlesonRect, boxes) -> bool:
    """closure(target) covered by the closures of the given pieces, using
    the angle range as written (no 2*pi wrap); disks count as full-angle
    boxes [0, rho]."""
    rs = {target.r1, target.r2}
    ts = {target.theta1, target.theta2}
    closed = []
    for b in boxes:
        if isinstance(b, RationalDisk):
            closed.append((Fraction(0), b.radius, None, None))
            rs.add(b.radius)
        else:
            closed.append((b.r1, b.r2, b.theta1, b.theta2))
            rs.update((b.r1, b.r2))
            ts.update((b.theta1, b.theta2))
    rs = sorted(x for x in rs if target.r1 <= x <= target.r2)
    ts = sorted(x for x in ts if target.theta1 <= x <= target.theta2)
    for ra, rb in zip(rs, rs[1:]):
        rm = (ra + rb) / 2
        for ta, tb in zip(ts, ts[1:]):
            tm = (ta + tb) / 2
            if not any(
                lo <= rm <= hi and (t1 is None or t1 <= tm <= t2) for lo, hi, t1, t2 in closed
            ):
                return False
    # degenerate grids (single breakpoint) cannot occur: r1 < r2 and t1 < t2
    return True


@lru_cache(maxsize=1 << 14)
def piece_bbox(piece: DomainPiece, bits: int = 48) -> RationalRect:
    """Rational bounding box of the closure of a piece."""
    if isinstance(piece, RationalDisk):
        r = piece.radius
        return RationalRect(-r, r, -r, r)
    from ..exact import cos_interval, sin_interval

    angles = RationalInterval(piece.theta1, piece.theta2)
    radii = RationalInterval(piece.r1, piece.r2)
    xs = radii * cos_interval(angles, bits)
    ys = radii * sin_interval(angles, bits)
    return RationalRect(xs.lo, xs.hi, ys.lo, ys.hi)


def piece_witness_points(piece: DomainPiece, bits: int = 48) -> list[RationalPoint]:
    """Rational points certified to lie in the closure of the piece.

    Used for lower bounds on diameters of unions of pieces."""
    if isinstance(piece, RationalDisk):
        r = piece.radius
        return [RationalPoint(r, 0), RationalPoint(-r, 0), RationalPoint(0, r), RationalPoint(0, -r)]
    out = []
    w = (piece.theta2 - piece.theta1) / 64
    h = (piece.r2 - piece.r1) / 64
    for theta in (piece.theta1 + w, piece.theta2 - w, (piece.theta1 + piece.theta2) / 2):
        c, s = cos_enclosure(theta, bits), sin_enclosure(theta, bits)
        # rational stand-ins for r e^{i theta}, nudged inward and verified
        for r in (piece.r1 + h, piece.r2 - h):
            p = RationalPoint(r * c.mid, r * s.mid)
            if _in_closure(piece, p, bits):
                out.append(p)
    return out


def _in_closure(piece: CarlesonRect, p: RationalPoint, bits: int) -> bool:
    a = p.abs_sq()
    if not (piece.r1 * piece.r1 <= a <= piece.r2 * piece.r2):
        return False
    arg = angle_enclosure(p.x, p.y, bits)
    two_pi = 2 * pi_interval(bits)
    for j in range(-3, 4):
        shifted = arg + two_pi * j
        if piece.theta1 <= shifted.lo and shifted.hi <= piece.theta2:
            return True
    return False
