"""Rational polylines and the exact "goes straight through" test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact import RationalPoint, RationalRect, point_rect_distance_sq
from .structures import ChainStructureError, WitnessingChain, is_simple_chain, point_in_link

__all__ = ["Polyline", "goes_straight_through", "segment_rect_distance_sq"]


def _orient(a: RationalPoint, b: RationalPoint, c: RationalPoint) -> int:
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (v > 0) - (v < 0)


def _on_segment(a, b, p) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _segments_meet(a, b, c, d) -> bool:
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
        or (o1 != o2 and o3 != o4)
    )


@dataclass(frozen=True)
class Polyline:
    vertices: tuple[RationalPoint, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("a polyline needs at least two vertices")
        if any(a == b for a, b in zip(vs, vs[1:])):
            raise ValueError("consecutive polyline vertices must differ")
        segs = list(zip(vs, vs[1:]))
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                a, b = segs[i]
                c, d = segs[j]
                if j == i + 1:
                    # adjacent segments may only share their common vertex
                    if _orient(a, b, d) == 0 and _on_segment(a, b, d):
                        raise ValueError("polyline folds back on itself")
                    continue
                if _segments_meet(a, b, c, d):
                    raise ValueError("polyline is not simple")

    def segments(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> "Polyline":
        return Polyline(tuple(reversed(self.vertices)))


def _point_segment_distance_sq(p, a, b) -> Fraction:
    dx, dy = b.x - a.x, b.y - a.y
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)
    t = min(Fraction(1), max(Fraction(0), t))
    qx, qy = a.x + t * dx - p.x, a.y + t * dy - p.y
    return qx * qx + qy * qy


def _segment_hits_rect(a, b, r: RationalRect) -> bool:
    """Liang-Barsky clip of [a, b] against the closed rectangle."""
    t0, t1 = Fraction(0), Fraction(1)
    dx, dy = b.x - a.x, b.y - a.y
    for p, q in ((-dx, a.x - r.x_lo), (dx, r.x_hi - a.x), (-dy, a.y - r.y_lo), (dy, r.y_hi - a.y)):
        if p == 0:
            if q < 0:
                return False
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return False
    return True


def segment_rect_distance_sq(a: RationalPoint, b: RationalPoint, r: RationalRect) -> Fraction:
    if a == b:
        return point_rect_distance_sq(a, r)
    if _segment_hits_rect(a, b, r):
        return Fraction(0)
    cands = [point_rect_distance_sq(a, r), point_rect_distance_sq(b, r)]
    cands += [_point_segment_distance_sq(c, a, b) for c in r.corners()]
    return min(cands)


class _Link:
    def __init__(self, w: WitnessingChain):
        self.rects = w.rects
        self.r2 = w.radius * w.radius

    def surely_in(self, a, b) -> bool:
        # each neighbourhood is convex: both ends inside one => segment inside
        return any(
            point_rect_distance_sq(a, r) < self.r2 and point_rect_distance_sq(b, r) < self.r2
            for r in self.rects
        )

    def surely_out_of_closure(self, a, b) -> bool:
        return all(segment_rect_distance_sq(a, b, r) > self.r2 for r in self.rects)

    def surely_out(self, a, b) -> bool:
        return all(segment_rect_distance_sq(a, b, r) >= self.r2 for r in self.rects)


def _flags(a, b, here: _Link, there: _Link):
    """(certain, possible) membership of the segment in here - closure(there)."""
    certain = here.surely_in(a, b) and there.surely_out_of_closure(a, b)
    possible = not here.surely_out(a, b) and not there.surely_in(a, b)
    return certain, possible


def _has_triple(seq_s, seq_t) -> bool:
    """Indices i < k < l with seq_s[i], seq_t[k], seq_s[l] all true."""
    n = len(seq_s)
    first_s = next((i for i in range(n) if seq_s[i]), None)
    last_s = next((i for i in range(n - 1, -1, -1) if seq_s[i]), None)
    if first_s is None or last_s is None:
        return False
    return any(seq_t[k] for k in range(first_s + 1, last_s))


def goes_straight_through(arc: Polyline, links, depth_cap: int = 24) -> bool:
    """Exact test that the polyline enters the first link, leaves through the
    last, and never backtracks from link j+1 into link j.

    Segments are bisected where membership is uncertain; if the depth cap is
    reached without a decision the answer is False.
    """
    links = list(links)
    if not links or not is_simple_chain(links):
        raise ChainStructureError("goes_straight_through requires a simple chain")
    start, end = arc.vertices[0], arc.vertices[-1]
    if not (
        (point_in_link(start, links[0]) and point_in_link(end, links[-1]))
        or (point_in_link(end, links[0]) and point_in_link(start, links[-1]))
    ):
        return False
    wrapped = [_Link(w) for w in links]
    for j in range(len(links) - 1):
        here, there = wrapped[j], wrapped[j + 1]
        pieces = [(a, b, 0) for a, b in arc.segments()]
        while True:
            fs = [_flags(a, b, here, there) for a, b, _ in pieces]
            ft = [_flags(a, b, there, here) for a, b, _ in pieces]
            cs = [f[0] for f in fs]
            ct = [f[0] for f in ft]
            if _has_triple(cs, ct):
                return False
            ps = [f[1] for f in fs]
            pt = [f[1] for f in ft]
            ambiguous = [ps[i] and pt[i] for i in range(len(pieces))]
            if not _has_triple(ps, pt) and not any(ambiguous):
                break
            nxt = []
            refined = False
            for i, (a, b, d) in enumerate(pieces):
                uncertain = (ps[i] and not cs[i]) or (pt[i] and not ct[i])
                if uncertain and d < depth_cap:
                    m = RationalPoint((a.x + b.x) / 2, (a.y + b.y) / 2)
                    nxt += [(a, m, d + 1), (m, b, d + 1)]
                    refined = True
                else:
                    nxt.append((a, b, d))
            if not refined:
                return False
            pieces = nxt
    return True
