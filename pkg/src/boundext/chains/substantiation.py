"""Substantiation: certificates, checkable from the finite input data alone,
that a value rectangle or chain really approximates the intended object."""

from __future__ import annotations

from fractions import Fraction

from ..approximations import (
    CompactApprox,
    FunctionApprox,
    ULACApprox,
    point_in_piece,
    segment_covered,
    segment_meets_piece,
    ulac_lookup,
)
from ..exact import RationalPoint, RationalRect, as_rational, pow2, rect_diameter_sq
from .arcs import cover_beta_range, lambda_beta_range, piece_meets_beta_range
from .structures import ArcChain, WitnessingChain

__all__ = [
    "substantiate_point_value",
    "substantiate_segment_image",
    "segment_image_substantiated",
    "intersection_contains_cover_rect",
    "substantiate_restricted_witnessing_chain",
    "substantiate_sigma",
    "substantiate_cut_arc",
    "substantiate_tau",
    "tau_family",
]


def substantiate_point_value(phi: FunctionApprox, z: RationalPoint, v: RationalRect) -> bool:
    if not z.abs_sq() < 1:
        raise ValueError("substantiated points must lie in the open unit disk")
    return any(val == v and point_in_piece(u, z) for u, val in phi.pairs)


def _check_segment(s, r):
    s, r = as_rational(s), as_rational(r)
    if not (0 <= s < r < 1):
        raise ValueError(f"need 0 <= s < r < 1, got s={s}, r={r}")
    return s, r


def substantiate_segment_image(phi: FunctionApprox, s, r) -> CompactApprox | None:
    """Value rectangles of every piece meeting [s, r], if those pieces cover it."""
    s, r = _check_segment(s, r)
    meeting = [(u, v) for u, v in phi.pairs if segment_meets_piece(u, s, r)]
    if not meeting or not segment_covered([u for u, _ in meeting], s, r):
        return None
    seen: dict[RationalRect, None] = {}
    for _, v in meeting:
        seen.setdefault(v)
    return CompactApprox(tuple(seen))


def segment_image_substantiated(phi: FunctionApprox, s, r, cover: CompactApprox) -> bool:
    """Is `cover` exactly the value set of some tight cover of [s, r] by pieces?

    The largest admissible family (pieces meeting the segment whose value is
    in the cover) decides it: any witness family is contained in it."""
    s, r = _check_segment(s, r)
    wanted = cover.rect_set
    family = [(u, v) for u, v in phi.pairs if v in wanted and segment_meets_piece(u, s, r)]
    if {v for _, v in family} != set(wanted):
        return False
    return segment_covered([u for u, _ in family], s, r)


def intersection_contains_cover_rect(a: RationalRect, b: RationalRect, bd: CompactApprox) -> bool:
    inter = a.intersection(b)
    if inter is None:
        return False
    return any(inter.contains_rect(c) for c in bd.rects)


def substantiate_restricted_witnessing_chain(
    phi: FunctionApprox, bd: CompactApprox, g: ULACApprox, w: WitnessingChain
) -> bool:
    gm = ulac_lookup(g, w.m)
    if gm is None:
        return False
    bound = pow2(-2 * gm)
    if any(not rect_diameter_sq(r) < bound for r in w.rects):
        return False
    return all(intersection_contains_cover_rect(a, b, bd) for a, b in zip(w.rects, w.rects[1:]))


def substantiate_sigma(phi: FunctionApprox, bd: CompactApprox, g: ULACApprox, sigma: ArcChain) -> bool:
    if not all(substantiate_restricted_witnessing_chain(phi, bd, g, w) for w in sigma.chains):
        return False
    return all(
        intersection_contains_cover_rect(a.rects[-1], b.rects[0], bd)
        for a, b in zip(sigma.chains, sigma.chains[1:])
    )


def substantiate_cut_arc(phi: FunctionApprox, bd: CompactApprox, c: ArcChain, side: str) -> bool:
    """side='last' for the first cross-cut (its final witnessing chain may
    reach into the boundary cover), side='first' for the second."""
    if side not in ("first", "last"):
        raise ValueError("side must be 'first' or 'last'")
    ran = phi.range_set
    ends = ran | bd.rect_set
    special = len(c.chains) - 1 if side == "last" else 0
    for i, w in enumerate(c.chains):
        allowed = ends if i == special else ran
        if any(r not in allowed for r in w.rects):
            return False
    return True


def tau_family(phi: FunctionApprox, s0: Fraction, k: int, j: int, rects) -> list | None:
    """Largest family of pairs with value in `rects` whose pieces meet
    lambda_j, provided it covers lambda_j and uses every rectangle."""
    outer, inner = lambda_beta_range(s0, k, j)
    if inner is None:
        return None
    wanted = set(rects)
    cands = [(u, v) for u, v in phi.pairs if v in wanted]
    family = [(u, v) for u, v in cands if piece_meets_beta_range(u, s0, inner)]
    if {v for _, v in family} != wanted:
        return None
    if cover_beta_range(s0, outer, [u for u, _ in family]) is None:
        return None
    return family


def _tau_indices(kp: int) -> list[int]:
    return list(range(-kp, 0)) + list(range(1, kp + 1))


def substantiate_tau(
    phi: FunctionApprox,
    bd: CompactApprox,
    s0,
    k0: int,
    tau: ArcChain,
    k_hint: int | None = None,
) -> bool:
    """Some k <= k0 and 1 <= k' < k with 2k' chains, chain j's rectangles
    being exactly the values of a tight cover of lambda_j.

    The boundary cover plays no role in the definition; the argument is kept
    for a uniform signature.
    """
    s0 = as_rational(s0)
    if not 0 < s0 < 1:
        raise ValueError("s0 must lie in (0, 1)")
    n = len(tau.chains)
    if n % 2:
        return False
    kp = n // 2
    if kp < 1:
        return False
    ks = range(kp + 1, k0 + 1)
    if k_hint is not None:
        ks = [k_hint] + [k for k in ks if k != k_hint] if kp < k_hint <= k0 else list(ks)
    for k in ks:
        if all(
            tau_family(phi, s0, k, j, w.rects) is not None
            for j, w in zip(_tau_indices(kp), tau.chains)
        ):
            return True
    return False
