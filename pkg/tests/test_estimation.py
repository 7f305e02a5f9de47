from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundext.estimation import MarginParams, chi_enclosure, margin_upper

mpmath.mp.dps = 30
F = Fraction


def mpf(q):
    return mpmath.mpf(q.numerator) / q.denominator


def chi_oracle(p: MarginParams):
    return 2 * mpmath.pi * mpf(p.N0) / (mpmath.log(mpf(p.s0)) - mpmath.log(1 - mpf(p.r)))


@st.composite
def valid_params(draw):
    s0 = draw(st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=1000))
    # r strictly above 1 - s0
    gap = draw(st.fractions(min_value=F(1, 1000), max_value=1, max_denominator=1000))
    r = 1 - s0 + gap * s0 * F(999, 1000)
    n0 = draw(st.fractions(min_value=F(1, 10), max_value=50, max_denominator=100))
    return MarginParams(s0, n0, r)


@given(valid_params(), st.integers(0, 30))
def test_chi_against_oracle(p, k):
    iv = chi_enclosure(p, k)
    ref = chi_oracle(p)
    assert mpf(iv.lo) <= ref <= mpf(iv.hi)
    assert iv.width <= F(1, 2**k)


@given(valid_params(), st.integers(0, 30))
def test_margin_against_oracle(p, k):
    m = margin_upper(p, k)
    ref = 2 * mpmath.sqrt(chi_oracle(p))
    assert ref <= mpf(m) <= ref + mpmath.mpf(2) ** -k
    # soundness chain: M**2 / 4 >= lower end of chi
    assert m * m / 4 >= chi_enclosure(p, k).lo


def test_known_value():
    # chi(1/2, 1, 3/4) = 2 pi / ln 2; digits frozen from mpmath at 30 digits
    p = MarginParams(F(1, 2), F(1), F(3, 4))
    assert abs(mpf(chi_enclosure(p, 40).mid) - mpmath.mpf("9.0647202836543876192")) < mpmath.mpf(2) ** -40


def test_margin_monotone_in_k():
    p = MarginParams(F(1, 3), F(2), F(9, 10))
    vals = [margin_upper(p, k) for k in range(0, 25)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_margin_shrinks_as_r_grows():
    near = MarginParams(F(1, 2), F(1), 1 - F(1, 2**20))
    far = MarginParams(F(1, 2), F(1), F(3, 4))
    assert margin_upper(near, 20) < margin_upper(far, 20)


def test_sign_error_and_division_by_zero():
    with pytest.raises(ValueError, match="sign"):
        chi_enclosure(MarginParams(F(1, 4), F(1), F(1, 2)), 10)
    with pytest.raises(ZeroDivisionError):
        chi_enclosure(MarginParams(F(1, 2), F(1), F(1, 2)), 10)
    with pytest.raises(ZeroDivisionError):
        margin_upper(MarginParams(F(1, 4), F(1), F(3, 4)), 10)


def test_parameter_validation():
    with pytest.raises(ValueError):
        MarginParams(F(1), F(1), F(1, 2))
    with pytest.raises(ValueError):
        MarginParams(F(1, 2), F(0), F(1, 2))
