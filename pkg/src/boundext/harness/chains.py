"""Chain construction for known continua: grouping rectangle sequences into
simple chains of links, witnessing chains along boundary arcs, and arc
chains for polylines lying in the boundary cover."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..approximations import CompactApprox, ULACApprox, ulac_lookup
from ..chains import ArcChain, Polyline, WitnessingChain, is_simple_chain, link_diameter_bound
from ..errors import CapabilityError
from ..exact import RationalPoint, RationalRect, pow2, rect_diameter_sq, rect_distance_sq, union_bbox

__all__ = [
    "group_into_links",
    "boundary_rect_sequence",
    "restricted_exponent",
    "boundary_arc_chain",
    "polyline_cover_sequence",
    "generate_arc_chain",
]


def _far(r: RationalRect, block: Sequence[RationalRect], m: int) -> bool:
    reach = 2 * pow2(-m)
    return all(rect_distance_sq(r, o) > reach * reach for o in block)


def group_into_links(rects: Sequence[RationalRect], m: int, epsilon: Fraction | None = None) -> list[WitnessingChain]:
    """Split an ordered rectangle path into witnessing chains with exponent
    m whose links form a simple chain.

    A new block starts as soon as the next rectangle is clear of the block
    before the current one; the result is verified and a CapabilityError is
    raised if the path doubles back or a link exceeds epsilon.
    """
    if not rects:
        raise CapabilityError("nothing to group")
    blocks: list[list[RationalRect]] = [[rects[0]]]
    for r in rects[1:]:
        if len(blocks) < 2 or _far(r, blocks[-2], m):
            blocks.append([r])
        else:
            blocks[-1].append(r)
    chains = [WitnessingChain(m, tuple(b)) for b in blocks]
    if not is_simple_chain(chains):
        raise CapabilityError("rectangle path does not yield a simple chain of links")
    if epsilon is not None:
        worst = max(link_diameter_bound(w) for w in chains)
        if worst > epsilon:
            raise CapabilityError(f"link diameter bound {worst} exceeds epsilon {epsilon}")
    return chains


def boundary_rect_sequence(leaves: Sequence[RationalRect], snap=None) -> list[RationalRect]:
    """B_1, S_12, S_23, ..., B_N with S_ij the bounding box of B_i and B_j
    (optionally enlarged by `snap`), so that consecutive intersections each
    contain a cover rectangle."""
    if len(leaves) == 1:
        return [leaves[0]]
    seq = [leaves[0]]
    for a, b in zip(leaves, leaves[1:]):
        s = union_bbox((a, b))
        if snap is not None:
            s = snap(s) or s
        seq.append(s)
    seq.append(leaves[-1])
    return seq


def restricted_exponent(rects: Sequence[RationalRect], g: ULACApprox) -> int | None:
    """Largest m in dom(g) with every rectangle of diameter below 2**-g(m)."""
    d2 = max(rect_diameter_sq(r) for r in rects)
    best = None
    for m in range(len(g.values)):
        if d2 < pow2(-2 * ulac_lookup(g, m)):
            best = m
    return best


def boundary_arc_chain(
    leaves: Sequence[RationalRect], g: ULACApprox, epsilon: Fraction | None = None, snap=None
) -> ArcChain:
    seq = boundary_rect_sequence(leaves, snap)
    m = restricted_exponent(seq, g)
    if m is None:
        raise CapabilityError("no exponent in dom(g) admits rectangles this large")
    return ArcChain(tuple(group_into_links(seq, m, epsilon)))


def polyline_cover_sequence(arc: Polyline, bd: CompactApprox, steps: int = 16) -> list[RationalRect]:
    """Cover rectangles met along the polyline, in order of first contact."""
    seq: list[RationalRect] = []
    current = None
    for a, b in arc.segments():
        for i in range(steps + 1):
            t = Fraction(i, steps)
            p = RationalPoint(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            if current is not None and current.contains_point(p):
                continue
            hits = [r for r in bd.rects if r.contains_point(p)]
            if not hits:
                raise CapabilityError(f"polyline point {p} lies outside the boundary cover")
            # prefer a rectangle not yet used, then the one reaching furthest on
            fresh = [r for r in hits if r not in seq] or hits
            current = fresh[0]
            if not seq or seq[-1] != current:
                seq.append(current)
    # drop immediate returns (A, B, A) left by overlapping rectangles
    out: list[RationalRect] = []
    for r in seq:
        if r in out:
            del out[out.index(r) + 1:]
        else:
            out.append(r)
    return out


def generate_arc_chain(arc: Polyline, g: ULACApprox, epsilon, bd: CompactApprox) -> ArcChain:
    """Arc chain with diameter bound <= epsilon whose witnessing chains are
    substantiated against bd and g."""
    if not g.values:
        raise CapabilityError("empty ULAC approximation")
    epsilon = Fraction(epsilon)
    leaves = polyline_cover_sequence(arc, bd)
    return boundary_arc_chain(leaves, g, epsilon)
