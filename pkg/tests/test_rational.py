from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundext.exact import (
    as_rational,
    bounded_ceil,
    bounded_floor,
    ceil_dyadic,
    floor_dyadic,
    is_bounded_by,
    pow2,
    rationals_bounded_by,
    sqrt_lower,
    sqrt_upper,
)

fractions = st.fractions(min_value=-40, max_value=40, max_denominator=10**6)


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/6") == Fraction(1, 2)


def test_pow2_negative_and_positive():
    assert pow2(3) == 8
    assert pow2(-3) == Fraction(1, 8)
    assert pow2(0) == 1


@given(fractions, st.integers(0, 40))
def test_dyadic_rounding_brackets(x, bits):
    lo, hi = floor_dyadic(x, bits), ceil_dyadic(x, bits)
    assert lo <= x <= hi
    assert hi - lo <= pow2(-bits)
    assert (lo * 2**bits).denominator == 1 and (hi * 2**bits).denominator == 1


@given(st.fractions(min_value=0, max_value=1000, max_denominator=10**6), st.integers(0, 40))
def test_sqrt_bounds_are_tight(x, bits):
    lo, hi = sqrt_lower(x, bits), sqrt_upper(x, bits)
    assert lo * lo <= x <= hi * hi
    assert hi - lo <= pow2(-bits)


def test_sqrt_negative_raises():
    with pytest.raises(ValueError):
        sqrt_upper(Fraction(-1))


def test_bounded_by_uses_reduced_form():
    assert is_bounded_by(Fraction(6, 8), 4)  # 3/4
    assert not is_bounded_by(Fraction(5, 4), 4)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 13])
def test_bounded_floor_ceil_against_enumeration(m):
    lattice = rationals_bounded_by(m)
    probes = {Fraction(n, 97) for n in range(-3 * 97 * m // 2, 3 * 97 * m // 2)} | set(lattice)
    for x in sorted(probes):
        below = [q for q in lattice if q <= x]
        above = [q for q in lattice if q >= x]
        if below:
            assert bounded_floor(x, m) == max(below), (x, m)
        if above:
            assert bounded_ceil(x, m) == min(above), (x, m)
        else:
            with pytest.raises(ValueError):
                bounded_ceil(x, m)


@given(st.integers(1, 60), fractions)
def test_bounded_floor_oracle(m, x):
    lattice = rationals_bounded_by(m)
    below = [q for q in lattice if q <= x]
    if below:
        f = bounded_floor(x, m)
        assert f == max(below)
        assert is_bounded_by(f, m)


def test_bounded_m_zero_rejected():
    with pytest.raises(ValueError):
        bounded_floor(Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        rationals_bounded_by(0)
