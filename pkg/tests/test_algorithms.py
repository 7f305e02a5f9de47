from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from boundext import algorithms
from boundext.algorithms import (
    AlgorithmInputs,
    ClauseResult,
    Configuration,
    SearchBudget,
    algorithm1_report,
    algorithm2,
    algorithm3_report,
    config_output_rect,
    configuration_clauses,
    derive_constants,
    fallback_rect,
    rotate_function_approx,
)
from boundext.approximations import CompactApprox, FunctionApprox, PointApprox, rect_in_piece
from boundext.chains import ArcChain, WitnessingChain
from boundext.errors import DomainError, InconsistencyError
from boundext.estimation import MarginParams, margin_upper
from boundext.exact import CarlesonRect, RationalDisk, RationalPoint, RationalRect
from boundext.harness import build_candidate_configuration
from boundext.search import margin_lower_sq, prune_pairs

from conftest import generated

F = Fraction


def _brute_fallback_c(bd: CompactApprox) -> int:
    pts = [p for r in bd.rects for p in r.corners()]
    d2 = max(a.dist_sq(b) for a, b in combinations(pts, 2))
    c = 0
    while c * c < d2:
        c += 1
    return c


@pytest.mark.parametrize("name", ["identity", "quad:1/3"])
def test_fallback_is_exact(name):
    _, inputs = generated(name, 3)
    c = _brute_fallback_c(inputs.bd)
    assert fallback_rect(inputs.bd) == RationalRect(-c, c, -c, c)


def test_single_disk_phi_falls_back():
    _, inputs = generated("identity", 3)
    phi = FunctionApprox(((RationalDisk.origin(F(1, 2)), RationalRect(-1, 1, -1, 1)),))
    res = algorithm1_report(AlgorithmInputs(phi, inputs.bd, inputs.g), SearchBudget(mode="exhaustive"))
    assert res.rect == fallback_rect(inputs.bd)
    assert res.configurations_found == 0


@pytest.fixture(scope="module")
def candidate():
    _, inputs = generated("identity", 5)
    rep = build_candidate_configuration(inputs, 5, 17)
    assert rep.config is not None, rep.notes
    return inputs, rep


def test_candidate_clause_log(candidate):
    inputs, rep = candidate
    names = {c.name: c for c in rep.clauses}
    for key in ("sigma substantiated", "C1 substantiated", "C2 substantiated", "tau substantiated",
                "phi(r0) substantiated", "(2) C1-last meets sigma-first", "(3) C2-first meets sigma-last",
                "(4) C1-first meets tau-last", "(5) C2-last meets tau-first"):
        assert names[key].passed, key
    # the margin clause cannot hold at this scale (see the ledger)
    assert not names["(9) margin separation"].passed


def test_guided_rejects_and_falls_back(candidate):
    inputs, rep = candidate
    res = algorithm1_report(inputs, SearchBudget(candidate_configs=(rep.config,)))
    assert res.configurations_found == 0
    assert res.rect == res.fallback == fallback_rect(inputs.bd)
    assert len(res.logs) == 1


def test_tau_middle_link_removed(candidate):
    inputs, rep = candidate
    c = rep.config
    k0, N0, _ = derive_constants(inputs)
    tau = ArcChain(c.tau.chains[:1] + c.tau.chains[2:])
    clauses = {r.name: r for r in configuration_clauses(inputs, k0, N0, replace(c, tau=tau))}
    assert not clauses["tau substantiated"].passed


def test_unbounded_rect_breaks_condition_1(candidate):
    inputs, rep = candidate
    c = rep.config
    k0, N0, _ = derive_constants(inputs)
    bad = RationalRect(F(1, k0 + 1), F(1, 2), 0, F(1, 2))
    w = c.c1.chains[0]
    c1 = ArcChain((WitnessingChain(w.m, (bad,) + w.rects[1:]),) + c.c1.chains[1:])
    clauses = {r.name: r for r in configuration_clauses(inputs, k0, N0, replace(c, c1=c1))}
    assert not clauses["(1) bounded-by-k0"].passed


def test_t_outside_ulac_domain_names_condition_8(candidate):
    inputs, rep = candidate
    k0, N0, _ = derive_constants(inputs)
    clauses = {r.name: r for r in configuration_clauses(inputs, k0, N0, replace(rep.config, t=40))}
    assert "t in dom(g)" in clauses["(8) interior separation"].detail


def test_accepted_configurations_intersect(candidate, monkeypatch):
    inputs, rep = candidate
    a = replace(rep.config, phi_r0=RationalRect(0, F(1, 8), 0, F(1, 8)))
    b = replace(rep.config, phi_r0=RationalRect(F(1, 4), F(1, 2), 0, F(1, 8)), k1=6)
    monkeypatch.setattr(algorithms, "configuration_clauses", lambda *args, **kw: [ClauseResult("all", True)])
    monkeypatch.setattr(algorithms, "circular_diameter_bound", lambda c, bits=20: F(1, 2**20))
    one = algorithm1_report(inputs, SearchBudget(candidate_configs=(a,)))
    assert one.configurations_found == 1 and one.rect != one.fallback
    assert one.fallback.contains_rect(one.rect)
    with pytest.raises(InconsistencyError):
        algorithm1_report(inputs, SearchBudget(candidate_configs=(a, b)))
    # a second compatible configuration can only shrink the output
    c = replace(a, k1=7, phi_r0=RationalRect(F(1, 16), F(1, 4), 0, F(1, 8)))
    two = algorithm1_report(inputs, SearchBudget(candidate_configs=(a, c)))
    assert one.rect.contains_rect(two.rect)


def test_config_output_rect():
    v = RationalRect(0, 1, 0, 1)
    # bound 3/16 < 2**-2: expand by 1/4
    assert config_output_rect(v, F(3, 16)) == v.expanded(F(1, 4))
    assert config_output_rect(v, F(1, 4)) == v.expanded(F(1, 2))
    with pytest.raises(ValueError):
        config_output_rect(v, F(0))


def test_fast_path_and_degenerate_points():
    _, inputs = generated("identity", 3)
    inside = PointApprox(RationalRect(F(1, 10), F(1, 5), 0, F(1, 10)))
    res = algorithm3_report(inputs, inside)
    assert res.fast_path
    want = None
    for u, v in inputs.phi.pairs:
        if rect_in_piece(inside.rect, u):
            want = v if want is None else want.intersection(v)
    assert res.rect == want
    touching = PointApprox(RationalRect(F(1, 2), 1, 0, F(1, 4)))
    assert algorithm3_report(inputs, touching).rect == fallback_rect(inputs.bd)
    with pytest.raises(DomainError):
        algorithm2(inputs, inside)


def test_rotation_shrinks_pieces():
    u = CarlesonRect(F(1, 2), F(3, 4), F(0), F(1))
    phi = FunctionApprox(((u, RationalRect(0, 1, 0, 1)), (RationalDisk.origin(F(1, 2)), RationalRect(0, 1, 0, 1))))
    psi = rotate_function_approx(phi, F(1, 10), F(2, 10))
    rotated = psi.pairs[0][0]
    assert (rotated.theta1, rotated.theta2) == (F(-1, 10), F(8, 10))
    # e^{i theta} maps the rotated piece into the original for theta in (a1, a2)
    for theta in (F(1, 10), F(3, 20), F(2, 10)):
        assert u.theta1 <= rotated.theta1 + theta and rotated.theta2 + theta <= u.theta2
    assert len(rotate_function_approx(phi, F(0), F(3, 2)).pairs) == 1
    with pytest.raises(ValueError):
        rotate_function_approx(phi, F(0), F(2))


def test_boundary_point_runs_fall_back():
    gt, inputs = generated("identity", 3)
    h = F(1, 8)
    res = algorithm3_report(inputs, PointApprox(RationalRect(1 - h, 1 + h, -h, h)))
    assert res.rect == fallback_rect(inputs.bd)
    assert res.fallback.contains_point(gt.map.eval_point(RationalPoint(1, 0)))


def test_exhaustive_pruning_is_exact():
    _, inputs = generated("identity", 3)
    k0, N0, _ = derive_constants(inputs)
    rows, pruned = prune_pairs(inputs, k0, N0)
    assert rows == []
    assert len(pruned) == (k0 - 2) * (k0 - 1) // 2
    # the pruning bound never exceeds the margin the clause actually uses
    for k1, k2 in [(2, 3), (2, k0), (k0 - 1, k0)]:
        m = margin_upper(MarginParams(F(1, k1), N0, 1 - F(1, k2)), 20)
        assert margin_lower_sq(N0, k1, k2) <= m * m
    res = algorithm1_report(inputs, SearchBudget(mode="exhaustive"))
    assert res.rect == fallback_rect(inputs.bd)
    assert len(res.pruned_pairs) == len(pruned)


def test_configuration_and_budget_validation(candidate):
    _, rep = candidate
    with pytest.raises(ValueError):
        replace(rep.config, k1=5, k2=5)
    with pytest.raises(ValueError):
        replace(rep.config, t=-1)
    with pytest.raises(ValueError):
        SearchBudget(mode="random")
    with pytest.raises(ValueError):
        SearchBudget(max_chain_length=0)
