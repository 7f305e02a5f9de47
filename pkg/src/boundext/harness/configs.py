"""Candidate configurations for guided mode, assembled from the input
approximations alone.

The builder follows the geometry of a cover produced by the generator: the
cross-cuts run radially out from the ends of the tau arc to the boundary,
sigma follows the boundary rectangles in their stored order, and tau is read
off the maximal value families of the arcs lambda_j. Nothing here is
trusted; every candidate is re-checked clause by clause.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from ..algorithms import (
    AlgorithmInputs,
    ClauseResult,
    Configuration,
    configuration_clauses,
    derive_constants,
)
from ..approximations import point_in_piece, segment_covered, segment_meets_piece, ulac_lookup
from ..chains import (
    ArcChain,
    WitnessingChain,
    arc_chain_diameter_bound,
    arc_point_rect,
    lambda_beta_range,
    piece_meets_beta_range,
    substantiate_segment_image,
    tau_family,
)
from ..errors import CapabilityError
from ..exact import RationalPoint, RationalRect, pow2, rect_diameter_sq, rect_distance_sq, sqrt_upper
from .chains import boundary_arc_chain, group_into_links
from .generate import VALUE_PRECISION, snap_rect

log = logging.getLogger(__name__)

__all__ = ["CandidateReport", "build_candidate_configuration", "build_guided_configuration", "guided_candidates"]

_TAU_KS = (3, 4, 6)
_TAU_KP = 2
_RAY_STEPS = 48


@dataclass
class CandidateReport:
    config: Configuration | None
    notes: list[str] = field(default_factory=list)
    clauses: list[ClauseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.config is not None and bool(self.clauses) and all(c.passed for c in self.clauses)


def _build_tau(phi, s0: Fraction, k0: int) -> tuple[int, ArcChain]:
    for k in _TAU_KS:
        if k > k0:
            break
        chains = []
        for j in list(range(-_TAU_KP, 0)) + list(range(1, _TAU_KP + 1)):
            _, inner = lambda_beta_range(s0, k, j)
            if inner is None:
                break
            # maximal family: every piece certified to meet the arc
            vals = tuple(dict.fromkeys(v for u, v in phi.pairs if piece_meets_beta_range(u, s0, inner)))
            if not vals or tau_family(phi, s0, k, j, vals) is None:
                break
            chains.append(WitnessingChain(VALUE_PRECISION, vals))
        else:
            return k, ArcChain(tuple(chains))
    raise CapabilityError("no tau arc chain could be read off the value families")


def _ray_values(phi, start: RationalPoint, first_pool: frozenset) -> list[RationalRect]:
    """Values of pieces met along the ray from `start` towards the unit
    circle, starting from a piece whose value lies in `first_pool`."""
    norm = sqrt_upper(start.abs_sq(), 40)
    outer = max(
        (u.r2 for u, _ in phi.pairs if hasattr(u, "r2")),
        default=Fraction(1, 2),
    )
    top = outer / norm
    seq: list[RationalRect] = []
    current = None
    for i in range(_RAY_STEPS + 1):
        lam = 1 + (top - 1) * Fraction(i, _RAY_STEPS)
        p = RationalPoint(start.x * lam, start.y * lam)
        if not p.abs_sq() < 1:
            break
        if current is not None and point_in_piece(current[0], p):
            continue
        hits = [(u, v) for u, v in phi.pairs if point_in_piece(u, p)]
        if not hits:
            continue
        if not seq:
            pool = [h for h in hits if h[1] in first_pool]
            hits = pool or hits
        # the piece reaching furthest out keeps the chain short
        current = max(hits, key=lambda h: getattr(h[0], "r2", Fraction(0)))
        if not seq or seq[-1] != current[1]:
            seq.append(current[1])
    if not seq:
        raise CapabilityError("ray left every piece")
    return seq


def _nearest_cover_index(bd, rect: RationalRect) -> int:
    return min(range(len(bd.rects)), key=lambda i: rect_distance_sq(bd.rects[i], rect))


def _exponent_for(seq) -> int:
    """Largest m <= VALUE_PRECISION keeping consecutive rectangles within
    link reach of each other."""
    m = VALUE_PRECISION
    for a, b in zip(seq, seq[1:]):
        while m > 0 and not rect_distance_sq(a, b) < (2 * pow2(-m)) ** 2:
            m -= 1
    return m


def _cyclic_slice(n: int, a: int, b: int) -> list[int]:
    """Indices from a to b along the shorter way round a cycle of length n."""
    fwd = (b - a) % n
    if fwd <= n - fwd:
        return [(a + i) % n for i in range(fwd + 1)]
    return [(a - i) % n for i in range(n - fwd + 1)]


def _best_t(sigma: ArcChain, c1: ArcChain, c2: ArcChain, g, k0: int) -> int:
    sig_rects = set(sigma.all_rects())
    a = [r for r in c1.all_rects() if r in sig_rects]
    b = [r for r in c2.all_rects() if r in sig_rects]
    d2 = min((rect_distance_sq(x, y) for x in a for y in b), default=None)
    diam = arc_chain_diameter_bound(sigma)
    best = 0
    for t in range(0, k0 + 1):
        gt = ulac_lookup(g, t)
        if gt is None or not diam < pow2(-t):
            break
        if d2 is not None and d2 < pow2(-2 * gt):
            best = t
    return best


def _smallest_value(phi, z: RationalPoint) -> RationalRect | None:
    vals = [v for u, v in phi.pairs if point_in_piece(u, z)]
    return min(vals, key=rect_diameter_sq) if vals else None


def build_candidate_configuration(
    inputs: AlgorithmInputs, k1: int, k2: int, evaluate: bool = True
) -> CandidateReport:
    """Assemble one candidate for (k1, k2), evaluating every clause unless
    `evaluate` is off."""
    rep = CandidateReport(None)
    if not 3 <= k1 < k2:
        rep.notes.append(f"builder needs 3 <= k1 < k2, got ({k1}, {k2})")
        return rep
    phi, bd, g = inputs.phi, inputs.bd, inputs.g
    k0, N0, _ = derive_constants(inputs)
    s0, r0 = Fraction(1, k1), 1 - Fraction(1, k2)
    try:
        tau_k, tau = _build_tau(phi, s0, k0)
        ends = []
        for j, pool in ((_TAU_KP, tau.last.rects), (-_TAU_KP, tau.first.rects)):
            outer, _ = lambda_beta_range(s0, tau_k, j)
            beta = outer.lo if j > 0 else outer.hi
            start = arc_point_rect(s0, beta).center
            vals = _ray_values(phi, start, frozenset(pool))
            ends.append((vals, _nearest_cover_index(bd, vals[-1])))
        (v1, ia), (v2, ib) = ends
        if ia == ib:
            raise CapabilityError("both cross-cuts end on the same cover rectangle")
        leaves = [bd.rects[i] for i in _cyclic_slice(len(bd.rects), ia, ib)]
        sigma = boundary_arc_chain(leaves, g, snap=lambda r: snap_rect(r, k0))
        seq1 = v1 + [sigma.first.rects[0]]
        seq2 = [sigma.last.rects[-1]] + v2[::-1]
        c1 = ArcChain(tuple(group_into_links(seq1, _exponent_for(seq1))))
        c2 = ArcChain(tuple(group_into_links(seq2, _exponent_for(seq2))))
    except CapabilityError as exc:
        rep.notes.append(str(exc))
        return rep

    t = _best_t(sigma, c1, c2, g, k0)
    u_cover = tuple(
        u for u in phi.domain_set
        if segment_meets_piece(u, Fraction(0), 1 - 2 * s0)
        and not segment_meets_piece(u, 1 - s0, Fraction(1), closed_piece=True)
    )
    if not segment_covered(u_cover, Fraction(0), 1 - 2 * s0):
        rep.notes.append("pieces clear of [1-s0, 1] do not cover [0, 1-2s0]")
    inner_rects = {r for w in tau.chains[1:-1] for r in w.rects}
    z1 = RationalPoint(1 - s0, Fraction(0))
    cands = [v for u, v in phi.pairs if point_in_piece(u, z1)]
    v_s0 = min(cands, key=lambda v: (v not in inner_rects, rect_diameter_sq(v)), default=None)
    v_r0 = _smallest_value(phi, RationalPoint(r0, Fraction(0)))
    seg = substantiate_segment_image(phi, 1 - s0, r0)
    if v_s0 is None or v_r0 is None or seg is None:
        rep.notes.append("phi(1-s0), phi(r0) or phi([1-s0, r0]) has no substantiated value")
        return rep
    rep.config = Configuration(
        k1=k1, k2=k2, c1=c1, c2=c2, sigma=sigma, tau=tau, t=t, u_cover=u_cover,
        phi_1_minus_s0=v_s0, phi_seg=seg, phi_r0=v_r0, tau_k=tau_k,
    )
    if not evaluate:
        return rep
    rep.clauses = configuration_clauses(inputs, k0, N0, rep.config)
    for c in rep.clauses:
        if not c.passed:
            rep.notes.append(f"clause {c.name} failed {c.detail}".rstrip())
    return rep


def build_guided_configuration(inputs: AlgorithmInputs, k1: int, k2: int) -> Configuration | None:
    """The candidate for (k1, k2) if it passes every clause, else None."""
    rep = build_candidate_configuration(inputs, k1, k2)
    return rep.config if rep.passed else None


def guided_candidates(inputs: AlgorithmInputs, pairs=None) -> list[Configuration]:
    """Candidates for guided mode. Failing candidates are kept: the
    algorithm re-checks them and records why they were rejected."""
    k0, _, _ = derive_constants(inputs)
    if pairs is None:
        pairs = [(k1, k0) for k1 in (5, 9) if k1 < k0]
    out = []
    for k1, k2 in pairs:
        rep = build_candidate_configuration(inputs, k1, k2, evaluate=False)
        if rep.config is not None:
            out.append(rep.config)
        for note in rep.notes:
            log.info("candidate (%d, %d): %s", k1, k2, note)
    return out
