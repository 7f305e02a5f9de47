"""The arcs lambda_j of the circle |z - 1| = s0 inside the unit disk, and
certified tight covers of them by domain pieces.

Points are z = 1 + s0 e^{i beta}; the part of the circle inside the disk is
beta in (beta0, 2 pi - beta0) with beta0 = pi/2 + arcsin(s0/2). Its 2k equal
pieces are labelled clockwise from the bottom, negative indices below the
real axis.
"""

from __future__ import annotations

from fractions import Fraction

from ..approximations import DomainPiece, piece_bbox, rect_in_piece, rect_misses_piece
from ..exact import (
    RationalInterval,
    RationalRect,
    arcsin_enclosure,
    cos_interval,
    pi_interval,
    sin_interval,
)

__all__ = [
    "lambda_beta_range",
    "arc_rect",
    "arc_point_rect",
    "cover_beta_range",
    "piece_meets_beta_range",
]

_BITS = 48


def lambda_beta_range(s0: Fraction, k: int, j: int, bits: int = _BITS):
    """(outer, inner) rational enclosures of the beta-range of lambda_j.

    outer contains the true range, inner is contained in it."""
    if not (1 <= abs(j) <= k):
        raise ValueError(f"lambda index {j} outside 1..{k}")
    pi = pi_interval(bits)
    a = arcsin_enclosure(RationalInterval.point(s0 / 2), bits)
    step = (pi * Fraction(1, 2) - a) * Fraction(1, k)
    if j > 0:
        lo, hi = pi - step * j, pi - step * (j - 1)
    else:
        lo, hi = pi + step * (-j - 1), pi + step * (-j)
    outer = RationalInterval(lo.lo, hi.hi)
    inner = RationalInterval(lo.hi, hi.lo) if lo.hi < hi.lo else None
    return outer, inner


def arc_rect(s0: Fraction, betas: RationalInterval, bits: int = _BITS) -> RationalRect:
    """Open rectangle containing 1 + s0 e^{i beta} for all beta in betas."""
    pad = Fraction(1, 1 << bits)
    xs = 1 + s0 * cos_interval(betas, bits)
    ys = s0 * sin_interval(betas, bits)
    return RationalRect(xs.lo - pad, xs.hi + pad, ys.lo - pad, ys.hi + pad)


def arc_point_rect(s0: Fraction, beta: Fraction, bits: int = _BITS) -> RationalRect:
    return arc_rect(s0, RationalInterval.point(beta), bits)


def cover_beta_range(s0: Fraction, betas: RationalInterval, pieces, depth_cap: int = 24, choose=None):
    """Certify that the pieces cover the arc over `betas` by bisection.

    Returns the list of (sub-interval, piece index) assignments, or None if
    some sub-arc could not be placed inside a piece within the depth cap.
    `choose(candidates)` picks among pieces containing a sub-arc (default:
    the first)."""
    pieces = list(pieces)
    boxes = [piece_bbox(p) for p in pieces]
    stack = [(betas, 0)]
    out = []
    while stack:
        iv, depth = stack.pop()
        rect = arc_rect(s0, iv)
        hits = [
            i
            for i, p in enumerate(pieces)
            if boxes[i].intersection(rect) is not None and rect_in_piece(rect, p)
        ]
        if hits:
            out.append((iv, hits[0] if choose is None else choose(hits)))
            continue
        if depth >= depth_cap:
            return None
        mid = iv.mid
        stack.append((RationalInterval(mid, iv.hi), depth + 1))
        stack.append((RationalInterval(iv.lo, mid), depth + 1))
    out.sort(key=lambda t: t[0].lo)
    return out


def piece_meets_beta_range(piece: DomainPiece, s0: Fraction, inner: RationalInterval, depth_cap: int = 12) -> bool:
    """Certify that the piece contains some point of the arc over `inner`.

    Breadth-first bisection; sub-arcs certified to miss the piece are dropped.
    """
    box = piece_bbox(piece)
    frontier = [inner]
    for _ in range(depth_cap + 1):
        nxt = []
        for iv in frontier:
            rect = arc_rect(s0, iv)
            if box.intersection(rect) is None or rect_misses_piece(rect, piece):
                continue
            if rect_in_piece(rect, piece):
                return True
            mid = iv.mid
            nxt += [RationalInterval(iv.lo, mid), RationalInterval(mid, iv.hi)]
        frontier = nxt
        if not frontier:
            return False
    return False
