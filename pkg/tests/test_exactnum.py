"""Exact numeric kernel: rationals with eps, counting numbers, series."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catlevel.exactnum import (
    CharPoly,
    EpsRational,
    RaneyDomainError,
    TruncatedEGF,
    as_rational,
    binomial,
    binomial_poly,
    catalan_convolution,
    egf_compose_exp,
    egf_compose_log,
    egf_pow,
    falling_binomial,
    lagrange_coefficients,
    mcat_closed_form_extended,
    mcat_level_closed_form,
    poly_interpolate,
    raney,
    stirling,
)


def test_as_rational_accepts_ints_strings_fractions():
    assert as_rational(3) == Fraction(3)
    assert as_rational("3/2") == Fraction(3, 2)
    assert as_rational(Fraction(-1, 4)) == Fraction(-1, 4)


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


# --- infinitesimal-extended rationals ----------------------------------

eps_values = st.builds(
    EpsRational,
    st.fractions(max_denominator=40),
    st.integers(min_value=-5, max_value=5),
)


@given(eps_values, eps_values, eps_values)
def test_eps_rational_is_an_ordered_abelian_group(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == EpsRational(Fraction(0), 0)
    # total order compatible with addition
    assert (a < b) or (b < a) or (a == b)
    if a < b:
        assert a + c < b + c


def test_eps_tie_break_is_strict():
    exact = EpsRational.exact(Fraction(1, 2))
    nudged = EpsRational(Fraction(1, 2), -1)
    assert nudged < exact
    assert nudged.is_negative() is False
    assert EpsRational(Fraction(0), -3).is_negative()


def test_eps_substitute():
    v = EpsRational(Fraction(2), -3)
    assert v.substitute(Fraction(1, 6)) == Fraction(3, 2)


# --- binomials and Stirling numbers ------------------------------------


def test_binomial_values():
    assert binomial(5, 2) == 10
    assert binomial(5, 0) == 1
    assert binomial(4, 7) == 0


def test_falling_binomial_handles_negative_tops():
    # binom(-1, 3) = (-1)(-2)(-3)/6 = -1
    assert falling_binomial(-1, 3) == -1
    assert falling_binomial(7, 2) == 21


def test_stirling_cycle_values():
    t = stirling(5)
    assert [t.c(4, k) for k in range(1, 5)] == [6, 11, 6, 1]
    assert t.c(5, 1) == 24
    assert t.s(4, 2) == 7
    assert t.s(5, 3) == 25


def test_stirling_orthogonality():
    # sum_k (-1)^(n-k) S(n,k) c(k,j) = [n == j]
    t = stirling(7)
    for n in range(8):
        for j in range(8):
            total = sum(
                (-1) ** (n - k) * t.s(n, k) * t.c(k, j)
                for k in range(8)
            )
            assert total == (1 if n == j else 0)


# --- Raney numbers and level closed forms ------------------------------


def test_raney_known_values():
    assert raney(3, 1, 1) == 5
    assert raney(4, 1, 1) == 14
    assert raney(2, 2, 1) == 3
    assert raney(3, 2, 1) == 12
    assert raney(4, 2, 1) == 55
    assert raney(3, 1, 2) == 14  # coefficient of t^3 in the squared series
    assert raney(0, 3, 1) == 1


def test_raney_pole_raises():
    with pytest.raises(RaneyDomainError):
        raney(1, 1, -2)


def test_mcat_level_closed_form_small():
    assert [mcat_level_closed_form(3, 1, lev) for lev in (1, 2, 3)] == [2, 2, 1]
    assert mcat_level_closed_form(2, 2, 1) == 2
    assert mcat_level_closed_form(2, 2, 2) == 1
    assert mcat_level_closed_form(1, 4, 1) == 1
    assert mcat_level_closed_form(3, 1, 0) == 0
    with pytest.raises(ValueError):
        mcat_level_closed_form(3, 1, 4)


def test_mcat_closed_form_sums_to_raney():
    # levels of one chamber add up to the chamber total
    for n in range(1, 5):
        for m in (1, 2, 3):
            total = sum(
                mcat_level_closed_form(n, m, lev) for lev in range(1, n + 1)
            )
            assert total == raney(n, m, 1)


def test_mcat_extended_agrees_on_the_counting_range():
    for n in range(1, 5):
        for m in (1, 2):
            for lev in range(1, n + 1):
                assert mcat_closed_form_extended(n, m, lev) == \
                    mcat_level_closed_form(n, m, lev)


def test_catalan_convolution_values():
    assert catalan_convolution(3, 1) == 2
    assert catalan_convolution(4, 2) == 5
    assert catalan_convolution(5, 5) == 1
    with pytest.raises(ValueError):
        catalan_convolution(3, 4)


# --- truncated series ---------------------------------------------------


def test_egf_product_is_binomial_convolution():
    f = TruncatedEGF.from_counts([0, 1, 2, 12])
    g = f * f
    # coefficient of t^3/3!: sum binom(3,k) f_k f_{3-k} = 3*1*2 + 3*2*1
    assert g.coefficients[3] == 12
    assert g.coefficients[0] == 0


def test_egf_pow_matches_repeated_product():
    f = TruncatedEGF.from_counts([0, 1, 1, 7, 61])
    assert egf_pow(f, 3).coefficients == (f * f * f).coefficients
    assert egf_pow(f, 0).coefficients == TruncatedEGF.one(4).coefficients


def test_from_ordinary_round_trip():
    f = TruncatedEGF.from_ordinary([1, 1, 2, 5, 14])
    assert f.ordinary() == tuple(Fraction(v) for v in (1, 1, 2, 5, 14))
    assert f.ordinary_coefficient(4) == 14


def test_substitutions_are_mutually_inverse():
    f = TruncatedEGF.from_counts([0, 1, 2, 12, 120])
    assert egf_compose_log(egf_compose_exp(f)).coefficients == f.coefficients
    g = TruncatedEGF.from_counts([0, 1, 1, 7, 61])
    assert egf_compose_exp(egf_compose_log(g)).coefficients == g.coefficients


def test_substitution_carries_one_kind_to_the_other():
    walled = TruncatedEGF.from_counts([0, 1, 2, 12, 120])
    free = TruncatedEGF.from_counts([0, 1, 1, 7, 61])
    assert egf_compose_exp(walled).coefficients == free.coefficients
    assert egf_compose_log(free).coefficients == walled.coefficients


# --- polynomials --------------------------------------------------------


def test_charpoly_str_and_eval():
    p = CharPoly((0, 42, -12, 1))
    assert str(p) == "t^3 - 12t^2 + 42t"
    assert p.evaluate(2) == Fraction(44)
    assert p.degree == 3


def test_poly_interpolate_recovers_quadratic():
    pts = [(1, -2), (2, -2), (3, 0), (4, 4)]
    assert str(poly_interpolate(pts)) == "t^2 - 3t"


def test_lagrange_keeps_fractions():
    coeffs = lagrange_coefficients([(0, 0), (1, Fraction(1, 2))])
    assert coeffs == (Fraction(0), Fraction(1, 2))


def test_binomial_poly():
    # binom(t, 2) = t(t-1)/2
    assert binomial_poly(2) == (Fraction(0), Fraction(-1, 2), Fraction(1, 2))
    assert binomial_poly(0) == (Fraction(1),)


@given(st.integers(min_value=0, max_value=30), st.integers(min_value=1, max_value=6))
def test_binomial_poly_evaluates_to_binomial(t, lev):
    coeffs = binomial_poly(lev)
    value = sum(c * Fraction(t) ** k for k, c in enumerate(coeffs))
    assert value == binomial(t, lev)
