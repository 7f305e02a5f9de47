"""Search-and-intersect enclosures of boundary values phi(p).

algorithm1 handles p = 1, algorithm2 reduces a boundary point to p = 1 by a
rotation of the function approximation, algorithm3 dispatches between the
interior fast path and the boundary path.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .approximations import (
    CompactApprox,
    DomainPiece,
    FunctionApprox,
    PointApprox,
    ULACApprox,
    compact_diameter_bound,
    piece_witness_points,
    points_diameter_sq,
    rect_angle_bounds,
    rect_in_piece,
    segment_covered,
    segment_meets_piece,
    ulac_lookup,
    union_diameter_sq,
)
from .chains import (
    ArcChain,
    ChainStructureError,
    arc_chain_diameter_bound,
    is_circular_chain,
    is_simple_chain,
    segment_image_substantiated,
    substantiate_cut_arc,
    substantiate_point_value,
    substantiate_sigma,
    substantiate_tau,
)
from .errors import DomainError, InconsistencyError
from .estimation import MarginParams, margin_upper
from .exact import (
    CarlesonRect,
    RationalDisk,
    RationalPoint,
    RationalRect,
    angle_enclosure,
    ceil_dyadic,
    cos_enclosure,
    pi_interval,
    pow2,
    rect_bounded_by,
    rect_distance_sq,
    rect_in_neighborhood,
    sqrt_lower,
    sqrt_upper,
)

log = logging.getLogger(__name__)

__all__ = [
    "AlgorithmInputs",
    "Configuration",
    "SearchBudget",
    "ClauseResult",
    "Algorithm1Result",
    "derive_constants",
    "check_configuration",
    "configuration_clauses",
    "config_output_rect",
    "circular_diameter_bound",
    "algorithm1",
    "algorithm1_report",
    "rotate_function_approx",
    "algorithm2",
    "algorithm2_report",
    "algorithm3",
    "algorithm3_report",
    "fallback_rect",
]


@dataclass(frozen=True)
class AlgorithmInputs:
    phi: FunctionApprox
    bd: CompactApprox
    g: ULACApprox


@dataclass(frozen=True)
class Configuration:
    """One candidate (s0, r0, C1, sigma, C2, tau) with its auxiliary data.

    s0 = 1/k1 and r0 = 1 - 1/k2, so k1 < k2 is what makes s0 > 1 - r0.
    tau_k optionally names the subdivision count used for tau.
    """

    k1: int
    k2: int
    c1: ArcChain
    c2: ArcChain
    sigma: ArcChain
    tau: ArcChain
    t: int
    u_cover: tuple[DomainPiece, ...]
    phi_1_minus_s0: RationalRect
    phi_seg: CompactApprox
    phi_r0: RationalRect
    tau_k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "u_cover", tuple(self.u_cover))
        if not 2 <= self.k1 < self.k2:
            raise ValueError(f"need 2 <= k1 < k2, got k1={self.k1}, k2={self.k2}")
        if self.t < 0:
            raise ValueError("t is a natural number")

    @property
    def s0(self) -> Fraction:
        return Fraction(1, self.k1)

    @property
    def r0(self) -> Fraction:
        return 1 - Fraction(1, self.k2)

    @property
    def circular(self) -> tuple:
        return self.c1.chains + self.sigma.chains + self.c2.chains + self.tau.chains


@dataclass(frozen=True)
class SearchBudget:
    max_chain_length: int = 6
    max_rects_per_chain: int = 4
    max_chains_per_arc: int = 8
    mode: str = "guided"
    candidate_configs: tuple[Configuration, ...] = ()
    precision: int = 20
    r0_limit: Fraction | None = None
    # guided mode: called with the inputs actually searched (after any
    # rotation) to propose further candidates
    candidate_factory: Callable[[AlgorithmInputs], Sequence[Configuration]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "candidate_configs", tuple(self.candidate_configs))
        if self.mode not in ("guided", "exhaustive"):
            raise ValueError("mode must be 'guided' or 'exhaustive'")
        if min(self.max_chain_length, self.max_rects_per_chain, self.max_chains_per_arc) < 1:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    detail: str = ""


def _ceil_sqrt(x: Fraction) -> int:
    """Smallest integer c >= 0 with c**2 >= x."""
    c = math.isqrt(x.numerator // x.denominator)
    while c * c < x:
        c += 1
    return c


def fallback_rect(bd: CompactApprox) -> RationalRect:
    c = _ceil_sqrt(union_diameter_sq(bd))
    return RationalRect(Fraction(-c), Fraction(c), Fraction(-c), Fraction(c))


def derive_constants(inputs: AlgorithmInputs, bits: int = 20) -> tuple[int, Fraction, RationalRect]:
    d = compact_diameter_bound(inputs.bd, bits)
    k0 = math.ceil(1 / d) if d > 0 else 1
    N0 = pi_interval(bits).hi * union_diameter_sq(inputs.bd)
    return k0, N0, fallback_rect(inputs.bd)


# ---------------------------------------------------------------------------
# configuration clauses


def _shares_rect(a, b) -> bool:
    return bool(set(a.rects) & set(b.rects))


def _links_diameter_bound(chains, bits: int) -> Fraction:
    """Upper bound for the diameter of a union of links."""
    pts = [(p.x, p.y) for w in chains for r in w.rects for p in r.corners()]
    pad = max(w.radius for w in chains)
    return sqrt_upper(points_diameter_sq(pts), bits) + 2 * pad


def circular_diameter_bound(c: Configuration, bits: int = 20) -> Fraction:
    return _links_diameter_bound(c.circular, bits)


def _union_lower_diameter(pieces, bits: int) -> Fraction:
    pts = [(p.x, p.y) for u in pieces for p in piece_witness_points(u)]
    if len(pts) < 2:
        return Fraction(0)
    return sqrt_lower(points_diameter_sq(pts), bits)


def _intermediate_link_contains(rect: RationalRect, tau: ArcChain) -> bool:
    inner = tau.chains[1:-1]
    return any(rect_in_neighborhood(rect, r, w.m) for w in inner for r in w.rects)


def _chain_rects_bounded(c: Configuration, k0: int) -> bool:
    return all(
        rect_bounded_by(r, k0)
        for arc in (c.sigma, c.c1, c.c2, c.tau)
        for w in arc.chains
        for r in w.rects
    )


def _segment_separation(phi_seg: CompactApprox, cuts, margin: Fraction) -> tuple[bool, str]:
    # Each cut link is the 2**-m neighbourhood of its rectangles, so clearing
    # margin + 2**-m from every rectangle clears margin from the link itself.
    worst = None
    for w in cuts:
        need = (margin + w.radius) ** 2
        for r in w.rects:
            for v in phi_seg.rects:
                d2 = rect_distance_sq(v, r)
                if worst is None or d2 < worst:
                    worst = d2
                if not d2 > need:
                    return False, f"distance^2 {d2} does not exceed (margin + 2^-{w.m})^2"
    return True, f"min distance^2 {worst}"


def configuration_clauses(
    inputs: AlgorithmInputs, k0: int, N0: Fraction, c: Configuration, precision: int = 20
) -> list[ClauseResult]:
    """Every clause of the acceptance test, evaluated independently."""
    phi, bd, g = inputs.phi, inputs.bd, inputs.g
    out: list[ClauseResult] = []

    def add(name, ok, detail=""):
        out.append(ClauseResult(name, bool(ok), detail))

    s0, r0 = c.s0, c.r0
    add("parameters", c.k2 <= k0, f"k1={c.k1}, k2={c.k2}, k0={k0}")
    simple = all(is_simple_chain(a.chains) for a in (c.c1, c.c2, c.sigma, c.tau))
    add("arc-chains-simple", simple)

    add("(1) bounded-by-k0", _chain_rects_bounded(c, k0))
    add("(2) C1-last meets sigma-first", _shares_rect(c.c1.last, c.sigma.first))
    add("(3) C2-first meets sigma-last", _shares_rect(c.c2.first, c.sigma.last))
    add("(4) C1-first meets tau-last", _shares_rect(c.c1.first, c.tau.last))
    add("(5) C2-last meets tau-first", _shares_rect(c.c2.last, c.tau.first))

    z = RationalPoint(1 - s0, Fraction(0))
    sub = substantiate_point_value(phi, z, c.phi_1_minus_s0)
    inside = len(c.tau.chains) >= 3 and _intermediate_link_contains(c.phi_1_minus_s0, c.tau)
    add("(6) phi(1-s0) in intermediate tau link", sub and inside,
        f"substantiated={sub}, contained={inside}")

    links = c.circular
    try:
        circ = is_circular_chain(links)
    except ChainStructureError as exc:
        circ, detail = False, str(exc)
    else:
        detail = f"{len(links)} links"
    add("(7) circular chain", circ, detail)

    gt = ulac_lookup(g, c.t)
    sig_diam = arc_chain_diameter_bound(c.sigma, precision)
    parts = {"t<=k0": c.t <= k0, "t in dom(g)": gt is not None, "diam(sigma)<2^-t": sig_diam < pow2(-c.t)}
    a = [r for r in c.c1.all_rects() if r in set(c.sigma.all_rects())]
    b = [r for r in c.c2.all_rects() if r in set(c.sigma.all_rects())]
    if gt is not None and a and b:
        d2 = min(rect_distance_sq(x, y) for x in a for y in b)
        parts["d(C1^sigma,C2^sigma)<2^-g(t)"] = d2 < pow2(-2 * gt)
    else:
        parts["d(C1^sigma,C2^sigma)<2^-g(t)"] = False
    dom = phi.domain_set
    parts["U in dom(phi)"] = bool(c.u_cover) and all(u in dom for u in c.u_cover)
    parts["U covers [0,1-2s0]"] = segment_covered(c.u_cover, Fraction(0), 1 - 2 * s0)
    parts["U clear of [1-s0,1]"] = not any(
        segment_meets_piece(u, 1 - s0, Fraction(1), closed_piece=True) for u in c.u_cover
    )
    lhs = pow2(-c.t) + _links_diameter_bound(c.c1.chains + c.c2.chains + c.tau.chains, precision)
    rhs = _union_lower_diameter(c.u_cover, precision)
    parts["2^-t+diam(C1,C2,tau)<diam(U)"] = lhs < rhs
    failed = [k for k, v in parts.items() if not v]
    add("(8) interior separation", not failed, "failed: " + ", ".join(failed) if failed else "")

    seg_ok = segment_image_substantiated(phi, 1 - s0, r0, c.phi_seg)
    margin = margin_upper(MarginParams(s0, N0, r0), precision)
    sep, detail = _segment_separation(c.phi_seg, c.c1.chains + c.c2.chains, margin)
    add("(9) margin separation", seg_ok and sep, f"segment substantiated={seg_ok}; margin <= {ceil_dyadic(margin, 16)}; {detail}")

    add("sigma substantiated", substantiate_sigma(phi, bd, g, c.sigma))
    add("C1 substantiated", substantiate_cut_arc(phi, bd, c.c1, "last"))
    add("C2 substantiated", substantiate_cut_arc(phi, bd, c.c2, "first"))
    add("tau substantiated", substantiate_tau(phi, bd, s0, k0, c.tau, c.tau_k))
    add("phi(r0) substantiated", substantiate_point_value(phi, RationalPoint(r0, Fraction(0)), c.phi_r0))
    return out


def check_configuration(
    inputs: AlgorithmInputs, k0: int, N0: Fraction, c: Configuration, precision: int = 20
) -> bool:
    return all(r.passed for r in configuration_clauses(inputs, k0, N0, c, precision))


def config_output_rect(c: Configuration | RationalRect, circular_diam_bound: Fraction) -> RationalRect:
    """phi(r0) expanded by 2**-m, m the largest integer with bound < 2**-m."""
    v = c.phi_r0 if isinstance(c, Configuration) else c
    bound = Fraction(circular_diam_bound)
    if bound <= 0:
        raise ValueError("diameter bound must be positive")
    m = bound.denominator.bit_length() - bound.numerator.bit_length() - 2
    while pow2(-(m + 1)) > bound:
        m += 1
    return v.expanded(pow2(-m))


# ---------------------------------------------------------------------------
# Algorithm 1


@dataclass
class Algorithm1Result:
    rect: RationalRect
    fallback: RationalRect
    accepted: list[Configuration] = field(default_factory=list)
    logs: list[tuple[Configuration, list[ClauseResult]]] = field(default_factory=list)
    pruned_pairs: list[tuple[int, int]] = field(default_factory=list)
    fast_path: bool = False

    @property
    def configurations_found(self) -> int:
        return len(self.accepted)


def _intersect_all(rects: Sequence[RationalRect]) -> RationalRect:
    out = rects[0]
    for r in rects[1:]:
        nxt = out.intersection(r)
        if nxt is None:
            raise InconsistencyError(f"accepted configurations have disjoint outputs: {out} and {r}")
        out = nxt
    return out


def _pair_allowed(c: Configuration, k0: int, budget: SearchBudget) -> bool:
    if budget.r0_limit is not None and not c.r0 < budget.r0_limit:
        return False
    return c.k2 <= k0


def algorithm1_report(inputs: AlgorithmInputs, budget: SearchBudget | None = None) -> Algorithm1Result:
    budget = budget or SearchBudget()
    k0, N0, fallback = derive_constants(inputs, budget.precision)
    result = Algorithm1Result(rect=fallback, fallback=fallback)
    if budget.mode == "guided":
        proposed = list(budget.candidate_configs)
        if budget.candidate_factory is not None:
            proposed += list(budget.candidate_factory(inputs))
        candidates = sorted(
            (c for c in proposed if _pair_allowed(c, k0, budget)),
            key=lambda c: (c.k1, c.k2),
        )
    else:
        from .search import exhaustive_candidates

        candidates, pruned = exhaustive_candidates(inputs, k0, N0, budget)
        result.pruned_pairs = pruned
        candidates = [c for c in candidates if _pair_allowed(c, k0, budget)]
    outputs = []
    for c in candidates:
        clauses = configuration_clauses(inputs, k0, N0, c, budget.precision)
        result.logs.append((c, clauses))
        if all(r.passed for r in clauses):
            result.accepted.append(c)
            outputs.append(config_output_rect(c, circular_diameter_bound(c, budget.precision)))
        else:
            log.debug("rejected (k1=%d, k2=%d): %s", c.k1, c.k2, [r.name for r in clauses if not r.passed])
    if outputs:
        result.rect = _intersect_all(outputs)
    return result


def algorithm1(inputs: AlgorithmInputs, budget: SearchBudget | None = None) -> RationalRect:
    return algorithm1_report(inputs, budget).rect


# ---------------------------------------------------------------------------
# Algorithm 2


def rotate_function_approx(phi: FunctionApprox, alpha1, alpha2) -> FunctionApprox:
    """Pieces for psi(z) = phi(e^{i theta} z), valid for every theta in (alpha1, alpha2).

    A Carleson piece with angles (nu1, nu2) becomes (nu1 - alpha1, nu2 - alpha2),
    so that e^{i theta} maps the new piece into the old one.
    """
    alpha1, alpha2 = Fraction(alpha1), Fraction(alpha2)
    if alpha1 > alpha2:
        raise ValueError("need alpha1 <= alpha2")
    if not alpha2 - alpha1 < pi_interval(48).lo / 2:
        raise ValueError("rotation uncertainty must stay below pi/2")
    pairs = []
    for u, v in phi.pairs:
        if isinstance(u, RationalDisk):
            pairs.append((u, v))
            continue
        t1, t2 = u.theta1 - alpha1, u.theta2 - alpha2
        if t1 < t2:
            pairs.append((CarlesonRect(u.r1, u.r2, t1, t2), v))
    return FunctionApprox(tuple(pairs))


def _meets_circle(rect: RationalRect) -> bool:
    return rect.min_abs_sq() < 1 < rect.max_abs_sq()


def _closure_meets_circle(rect: RationalRect) -> bool:
    return rect.min_abs_sq() <= 1 <= rect.max_abs_sq()


@dataclass
class _Reduction:
    alpha1: Fraction
    alpha2: Fraction
    psi: FunctionApprox


def _reduce_to_one(inputs: AlgorithmInputs, p: PointApprox) -> _Reduction | None:
    rect = p.rect
    if not _meets_circle(rect):
        raise DomainError("the point approximation does not meet the unit circle")
    if rect.width ** 2 + rect.height ** 2 >= 2:
        return None
    bounds = rect_angle_bounds(rect)
    if bounds is None:
        return None
    a1, a2 = bounds
    if not a2 - a1 < pi_interval(48).lo / 2:
        return None
    return _Reduction(a1, a2, rotate_function_approx(inputs.phi, a1, a2))


def algorithm2_report(
    inputs: AlgorithmInputs, p: PointApprox, budget: SearchBudget | None = None
) -> Algorithm1Result:
    budget = budget or SearchBudget()
    red = _reduce_to_one(inputs, p)
    if red is None:
        fb = fallback_rect(inputs.bd)
        return Algorithm1Result(rect=fb, fallback=fb)
    return algorithm1_report(AlgorithmInputs(red.psi, inputs.bd, inputs.g), budget)


def algorithm2(inputs: AlgorithmInputs, p: PointApprox, budget: SearchBudget | None = None) -> RationalRect:
    return algorithm2_report(inputs, p, budget).rect


# ---------------------------------------------------------------------------
# Algorithm 3


def _r0_limit(rect: RationalRect, a1: Fraction, a2: Fraction, bits: int = 48) -> Fraction:
    """Lower bound of min Re(e^{i theta} z) over z in rect, -a2 < theta < -a1.

    arg z + theta stays within (a1 - a2, a2 - a1), so Re >= |z| cos(a2 - a1).
    """
    cos_lo = cos_enclosure(a2 - a1, bits).lo
    return sqrt_lower(rect.min_abs_sq(), bits) * max(cos_lo, Fraction(0))


def algorithm3_report(
    inputs: AlgorithmInputs, p: PointApprox, budget: SearchBudget | None = None
) -> Algorithm1Result:
    budget = budget or SearchBudget()
    rect = p.rect
    fb = fallback_rect(inputs.bd)
    if not _meets_circle(rect):
        if _closure_meets_circle(rect):
            return Algorithm1Result(rect=fb, fallback=fb)
        values = [v for u, v in inputs.phi.pairs if rect_in_piece(rect, u)]
        if not values:
            return Algorithm1Result(rect=fb, fallback=fb)
        return Algorithm1Result(rect=_intersect_all(values), fallback=fb, fast_path=True)
    red = _reduce_to_one(inputs, p)
    if red is None:
        return Algorithm1Result(rect=fb, fallback=fb)
    limit = _r0_limit(rect, red.alpha1, red.alpha2)
    if budget.r0_limit is not None:
        limit = min(limit, budget.r0_limit)
    restricted = dataclasses.replace(budget, r0_limit=limit)
    return algorithm1_report(AlgorithmInputs(red.psi, inputs.bd, inputs.g), restricted)


def algorithm3(inputs: AlgorithmInputs, p: PointApprox, budget: SearchBudget | None = None) -> RationalRect:
    return algorithm3_report(inputs, p, budget).rect
