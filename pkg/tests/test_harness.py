from fractions import Fraction
import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundext.approximations import (
    compact_approx_no_worse,
    function_approx_no_worse,
    point_in_piece,
    ulac_approx_no_worse,
)
from boundext.errors import CapabilityError, CertificateError
from boundext.exact import RationalPoint, RationalRect, rect_diameter_sq, pow2
from boundext.harness import (
    AnalyticTestMap,
    GroundTruth,
    boundary_leaves,
    eval_interval,
    generate_arc_chain,
    generate_ulac,
    parse_map_name,
    phi_pieces,
    snap_rect,
    true_value,
    ulac_constant,
)
from boundext.chains import Polyline, arc_chain_diameter_bound, goes_straight_through, substantiate_sigma

from conftest import generated

F = Fraction
mpmath.mp.dps = 40


def mpf(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_parse_map_name():
    assert parse_map_name("identity").is_identity
    q = parse_map_name("quad:1/3")
    assert q.coefficients[1] == (F(1, 3), 0)
    with pytest.raises(ValueError):
        parse_map_name("cubic")
    with pytest.raises(ValueError):
        parse_map_name("quad:1/0")
    with pytest.raises(ValueError):
        AnalyticTestMap.quadratic(F(3, 4))  # |c2| > 1/2 is not certified univalent


def test_eval_point_is_exact():
    m = AnalyticTestMap.quadratic(F(1, 3))
    p = RationalPoint(F(1, 2), F(1, 3))
    v = m.eval_point(p)
    # (x + iy) + (x + iy)**2 / 3
    assert v == RationalPoint(F(1, 2) + (F(1, 4) - F(1, 9)) / 3, F(1, 3) + 2 * F(1, 6) / 3)


def test_ulac_constants():
    assert ulac_constant(AnalyticTestMap.identity()) == 2
    assert ulac_constant(AnalyticTestMap.quadratic(F(1, 3))) == 5
    with pytest.raises(CertificateError):
        ulac_constant(AnalyticTestMap.quadratic(F(1, 2)))
    g = generate_ulac(GroundTruth(AnalyticTestMap.identity(), 3), 5)
    assert g.values == (2, 3, 4, 5, 6)


def test_ulac_certificate_by_sampling():
    """Boundary points 2**-(k+c) apart have image arcs of diameter < 2**-k."""
    m = AnalyticTestMap.quadratic(F(1, 3))
    c = ulac_constant(m)

    def f(t):
        z = mpmath.exp(1j * t)
        return z + z * z / 3

    rng = random.Random(7)
    for k in range(0, 6):
        d = mpmath.mpf(2) ** -(k + c)
        for _ in range(20):
            t0 = rng.uniform(0, 6.283)
            # chord d corresponds to arc 2 asin(d/2)
            span = 2 * mpmath.asin(d / 2)
            pts = [f(t0 + span * i / 16) for i in range(17)]
            diam = max(abs(a - b) for a in pts for b in pts)
            assert diam < mpmath.mpf(2) ** -k


def test_pieces_layout():
    pieces = phi_pieces(2)
    assert len(pieces) == 1 + 16 + 32
    for n in (1, 2, 3):
        assert set(phi_pieces(n)) <= set(phi_pieces(n + 1))


@pytest.mark.parametrize("name", ["identity", "quad:1/3"])
def test_values_contain_exact_images(name):
    gt, inputs = generated(name, 4)
    rng = random.Random(11)
    pairs = list(inputs.phi.pairs)
    checked = 0
    while checked < 200:
        p = RationalPoint(F(rng.randint(-999, 999), 1000), F(rng.randint(-999, 999), 1000))
        if not p.abs_sq() < 1:
            continue
        v = gt.map.eval_point(p)
        for u, val in pairs:
            if point_in_piece(u, p):
                assert val.contains_point(v), (u, p)
                checked += 1


@pytest.mark.parametrize("name", ["identity", "quad:1/3"])
def test_boundary_leaves_contain_boundary(name):
    gt, inputs = generated(name, 4)
    leaves = boundary_leaves(gt.map, 4)
    assert all(rect_diameter_sq(r) <= pow2(-8) for _, r in leaves)
    for i in range(300):
        t = F(i * 7 - 1000, 997)
        p = RationalPoint((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))  # exactly on the circle
        theta = 2 * mpmath.atan(mpf(t))
        if theta < mpf(leaves[0][0].lo):
            theta += 2 * mpmath.pi
        hits = [r for iv, r in leaves if mpf(iv.lo) < theta < mpf(iv.hi)]
        assert len(hits) == 1
        assert hits[0].contains_point(gt.map.eval_point(p))


@pytest.mark.parametrize("name", ["identity", "quad:1/3"])
def test_resolutions_are_nested(name):
    for n in (3, 4):
        _, coarse = generated(name, n)
        _, fine = generated(name, n + 1)
        assert function_approx_no_worse(fine.phi, coarse.phi)
        assert compact_approx_no_worse(fine.bd, coarse.bd)
        assert ulac_approx_no_worse(fine.g, coarse.g)


def test_snap_rect():
    r = RationalRect(F(1, 7), F(2, 7), F(-1, 9), F(1, 9))
    s = snap_rect(r, 4)
    assert s.contains_rect(r)
    assert snap_rect(RationalRect(0, 5, 0, 1), 4) is None


@given(st.fractions(min_value=-1, max_value=1, max_denominator=100), st.fractions(min_value=-1, max_value=1, max_denominator=100))
def test_true_value(x, y):
    p = RationalPoint(x, y)
    m = AnalyticTestMap.quadratic(F(1, 3))
    if p.abs_sq() > 1:
        with pytest.raises(ValueError):
            true_value(m, p, 20)
        return
    r = true_value(m, p, 20)
    assert r.center == m.eval_point(p)
    assert rect_diameter_sq(r) < pow2(-40)


def test_interval_evaluation_contains_samples():
    from boundext.approximations import piece_witness_points

    m = AnalyticTestMap.quadratic(F(1, 3))
    for u in phi_pieces(3)[::5]:
        box = eval_interval(m, u, 20)
        for p in piece_witness_points(u):
            assert box.contains_point(m.eval_point(p))


def _quarter_arc(n=160):
    # chords of a fine polyline stay within the padding of the cover
    pts = []
    for i in range(n + 1):
        t = F(i, n)
        pts.append(RationalPoint((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return Polyline(tuple(pts))


def test_generate_arc_chain():
    _, inputs = generated("identity", 5)
    arc = _quarter_arc()
    chain = generate_arc_chain(arc, inputs.g, F(3, 2), inputs.bd)
    assert arc_chain_diameter_bound(chain) <= F(3, 2)
    assert substantiate_sigma(inputs.phi, inputs.bd, inputs.g, chain)
    assert goes_straight_through(arc, chain.chains)
    with pytest.raises(CapabilityError):
        generate_arc_chain(arc, inputs.g, F(1, 64), inputs.bd)
