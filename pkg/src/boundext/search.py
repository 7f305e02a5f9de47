"""Exhaustive-mode candidate generation.

Only rectangles drawn from ran(phi) and the boundary cover can appear in a
substantiated configuration, so candidates are assembled from paths in the
adjacency graphs of that finite set.  Pairs (k1, k2) whose separation margin
already exceeds the diameter of everything available are pruned exactly:
no configuration for them can pass the margin clause.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from fractions import Fraction
from typing import Iterator

from .approximations import (
    FunctionApprox,
    point_in_piece,
    segment_covered,
    segment_meets_piece,
    ulac_lookup,
    union_diameter_sq,
)
from .chains import (
    ArcChain,
    WitnessingChain,
    arc_chain_diameter_bound,
    cover_beta_range,
    is_simple_chain,
    lambda_beta_range,
    link_intersects,
    piece_meets_beta_range,
    substantiate_segment_image,
)
from .exact import RationalPoint, RationalRect, ln_enclosure, pi_interval, pow2, rect_bounded_by, rect_diameter_sq

log = logging.getLogger(__name__)

__all__ = ["margin_lower_sq", "prune_pairs", "enumerate_configurations", "exhaustive_candidates"]


def margin_lower_sq(N0: Fraction, k1: int, k2: int, bits: int = 20) -> Fraction:
    """Rational lower bound of m(1/k1, N0, 1 - 1/k2)**2 = 8 pi N0 / ln(k2/k1)."""
    ln_hi = ln_enclosure(Fraction(k2, k1), bits).hi
    return 8 * pi_interval(bits).lo * N0 / ln_hi


def prune_pairs(inputs, k0: int, N0: Fraction, bits: int = 20) -> tuple[list[int], list[tuple[int, int]]]:
    """Split k1 values into searchable rows and pruned (k1, k2) pairs.

    m grows as k2 shrinks, so the row of k1 is pruned as soon as the pair
    (k1, k0) is.
    """
    rects = list(inputs.phi.range_set | inputs.bd.rect_set)
    d2 = union_diameter_sq(rects)
    rows, pruned = [], []
    for k1 in range(2, k0):
        if margin_lower_sq(N0, k1, k0, bits) >= d2:
            pruned.extend((k1, k2) for k2 in range(k1 + 1, k0 + 1))
        else:
            rows.append(k1)
    return rows, pruned


def _simple_paths(starts, goals, neighbours, max_len: int, cap: int) -> Iterator[list]:
    """Breadth-first simple paths from any start to any goal."""
    goals = set(goals)
    queue = deque([s] for s in starts)
    found = 0
    while queue and found < cap:
        path = queue.popleft()
        if path[-1] in goals:
            found += 1
            yield path
            continue
        if len(path) >= max_len:
            continue
        for nb in neighbours(path[-1]):
            if nb not in path:
                queue.append(path + [nb])


def _tau_candidates(phi: FunctionApprox, s0: Fraction, k0: int, allowed: set, budget) -> Iterator[tuple[int, ArcChain]]:
    found = 0
    max_k = min(k0, budget.max_chain_length + 1)
    for k in range(2, max_k + 1):
        for kp in range(1, k):
            if 2 * kp > budget.max_chain_length:
                break
            chains = []
            for j in list(range(-kp, 0)) + list(range(1, kp + 1)):
                outer, inner = lambda_beta_range(s0, k, j)
                if inner is None:
                    break
                fam = [(u, v) for u, v in phi.pairs if v in allowed and piece_meets_beta_range(u, s0, inner)]
                if not fam or cover_beta_range(s0, outer, [u for u, _ in fam]) is None:
                    break
                vals = tuple(dict.fromkeys(v for _, v in fam))
                chains.append(WitnessingChain(budget.precision, vals))
            else:
                if is_simple_chain(chains):
                    yield k, ArcChain(tuple(chains))
                    found += 1
                    if found >= budget.max_chains_per_arc:
                        return


def _sigma_links(bd_rects, g, precision) -> dict[RationalRect, WitnessingChain]:
    """Single-rectangle witnessing chains valid for the ULAC restriction,
    each with the largest admissible exponent."""
    out = {}
    for r in bd_rects:
        d2 = rect_diameter_sq(r)
        best = None
        for m in range(len(g.values)):
            if d2 < pow2(-2 * ulac_lookup(g, m)):
                best = m
        if best is not None:
            out[r] = WitnessingChain(best, (r,))
    return out


def enumerate_configurations(inputs, k1: int, k2: int, k0: int, budget) -> Iterator:
    """Candidate configurations for one (k1, k2), capped by the budget."""
    from .algorithms import Configuration

    phi, bd, g = inputs.phi, inputs.bd, inputs.g
    s0, r0 = Fraction(1, k1), 1 - Fraction(1, k2)
    bounded = {r for r in phi.range_set | bd.rect_set if rect_bounded_by(r, k0)}
    ran = {r for r in phi.range_set if r in bounded}
    bd_ok = [r for r in bd.rects if r in bounded]
    cap = budget.max_chains_per_arc

    seg = substantiate_segment_image(phi, 1 - s0, r0)
    z1 = RationalPoint(1 - s0, Fraction(0))
    zr = RationalPoint(r0, Fraction(0))
    v1s = [v for u, v in phi.pairs if point_in_piece(u, z1)]
    vrs = [v for u, v in phi.pairs if point_in_piece(u, zr)]
    if seg is None or not v1s or not vrs:
        return
    u_cover = tuple(
        u for u in phi.domain_set
        if segment_meets_piece(u, Fraction(0), 1 - 2 * s0)
        and not segment_meets_piece(u, 1 - s0, Fraction(1), closed_piece=True)
    )
    if not segment_covered(u_cover, Fraction(0), 1 - 2 * s0):
        return

    sig = _sigma_links(bd_ok, g, budget.precision)
    bd_set = bd.rect_set

    def sigma_nb(r):
        return [o for o in sig if o != r and _junction_witnessed(r, o, bd_set)]

    def cut_link(r):
        return WitnessingChain(budget.precision, (r,))

    def cut_nb(pool):
        def nb(r):
            return [o for o in pool if o != r and link_intersects(cut_link(r), cut_link(o))]
        return nb

    sigmas = []
    for path in _simple_paths(list(sig), list(sig), sigma_nb, budget.max_chain_length, cap * len(sig)):
        sigmas.append(ArcChain(tuple(sig[r] for r in path)))

    for tau_k, tau in _tau_candidates(phi, s0, k0, bounded, budget):
        for sigma, v1, vr in itertools.product(sigmas[: cap * cap], v1s, vrs):
            c1_paths = _simple_paths(
                list(tau.last.rects), list(sigma.first.rects),
                cut_nb(ran | set(sigma.first.rects)), budget.max_chain_length, cap,
            )
            c2_paths = _simple_paths(
                list(sigma.last.rects), list(tau.first.rects),
                cut_nb(ran | set(sigma.last.rects)), budget.max_chain_length, cap,
            )
            c2_list = list(c2_paths)
            sd = arc_chain_diameter_bound(sigma, budget.precision)
            t = 0
            while t + 1 <= k0 and sd < pow2(-(t + 1)) and ulac_lookup(g, t + 1) is not None:
                t += 1
            for p1 in c1_paths:
                for p2 in c2_list:
                    yield Configuration(
                        k1=k1, k2=k2,
                        c1=ArcChain(tuple(cut_link(r) for r in p1)),
                        c2=ArcChain(tuple(cut_link(r) for r in p2)),
                        sigma=sigma, tau=tau, t=t, u_cover=u_cover,
                        phi_1_minus_s0=v1, phi_seg=seg, phi_r0=vr, tau_k=tau_k,
                    )


def _junction_witnessed(a: RationalRect, b: RationalRect, bd_set) -> bool:
    inter = a.intersection(b)
    return inter is not None and any(inter.contains_rect(c) for c in bd_set)


def exhaustive_candidates(inputs, k0: int, N0: Fraction, budget) -> tuple[list, list[tuple[int, int]]]:
    rows, pruned = prune_pairs(inputs, k0, N0, budget.precision)
    if pruned:
        log.info("margin pruning removed %d of the (k1, k2) pairs", len(pruned))
    out = []
    for k1 in rows:
        for k2 in range(k1 + 1, k0 + 1):
            if budget.r0_limit is not None and not 1 - Fraction(1, k2) < budget.r0_limit:
                continue
            out.extend(enumerate_configurations(inputs, k1, k2, k0, budget))
    return out, pruned
