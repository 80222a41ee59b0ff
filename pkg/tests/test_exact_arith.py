import math
from fractions import Fraction

import pytest

from cicriteria.errors import InconclusiveComparisonError, PreconditionError
from cicriteria.exact_arith import (
    CertifiedInterval,
    IntPolynomial,
    as_text,
    binomial_poly,
    e_interval,
    pi_interval,
    power_sums,
    scaled_binomial_coefficients,
    stirling_check,
    stirling_holds,
)


@pytest.mark.parametrize(
    "top_shift,p,expected",
    [
        (0, 1, IntPolynomial.of(1, 1)),
        (0, 2, IntPolynomial.of(1, Fraction(3, 2), Fraction(1, 2))),
        (-2, 2, IntPolynomial.of(0, Fraction(-1, 2), Fraction(1, 2))),
    ],
)
def test_binomial_poly(top_shift, p, expected):
    assert binomial_poly(top_shift, p) == expected


def test_binomial_poly_counts_monomials():
    # binom(x + p, p) counts degree-x monomials in p + 1 variables
    poly = binomial_poly(0, 3)
    assert [poly(x) for x in range(5)] == [math.comb(x + 3, 3) for x in range(5)]
    assert poly.degree == 3
    assert poly.leading_coefficient == Fraction(1, 6)


@pytest.mark.parametrize("p", range(1, 9))
@pytest.mark.parametrize("top_shift", [-7, -1, 0, 3])
def test_binomial_poly_integral_outside_vanishing_window(top_shift, p):
    poly = binomial_poly(top_shift, p)
    for x in range(-20, 21):
        top = x + top_shift + p
        if x + top_shift >= 0:
            assert poly(x) == math.comb(top, p)
        elif top < 0:
            assert poly(x).denominator == 1
            assert poly(x) == (-1) ** p * math.comb(p - top - 1, p)


def test_scaled_coefficients_are_integers():
    coeffs = scaled_binomial_coefficients(-2, 4)
    assert all(isinstance(c, int) for c in coeffs)
    assert sum(coeffs) == math.factorial(4) * binomial_poly(-2, 4)(1)


def test_binomial_poly_requires_positive_p():
    with pytest.raises(PreconditionError):
        binomial_poly(0, 0)


@pytest.mark.parametrize(
    "e1,e2,j_max,expected",
    [
        (0, 0, 3, [2, 0, 0, 0]),
        (2, 1, 3, [2, 2, 2, 2]),
        (0, -3, 4, [2, 0, 6, 0, 18]),
    ],
)
def test_power_sums(e1, e2, j_max, expected):
    assert power_sums(e1, e2, j_max) == expected


def test_power_sums_short_requests():
    assert power_sums(5, 7, 0) == [2]
    with pytest.raises(PreconditionError):
        power_sums(1, 1, -1)


def test_polynomial_arithmetic():
    x_plus_one = IntPolynomial.of(1, 1)
    square = x_plus_one * x_plus_one
    assert square == IntPolynomial.of(1, 2, 1)
    assert (square + IntPolynomial.of(-1, -2, -1)).degree == -1
    assert (x_plus_one * 3)(2) == 9
    assert str(IntPolynomial()) == "0"


def test_pi_and_e_enclosures():
    pi = pi_interval(40)
    e = e_interval(40)
    assert pi.lo <= Fraction(math.pi) + Fraction(1, 10**15)
    assert pi.lo < pi.hi
    assert pi.width < Fraction(1, 10**40)
    assert Fraction(2718281828, 10**9) < e.lo < e.hi < Fraction(2718281829, 10**9)


def test_enclosure_needs_enough_digits():
    with pytest.raises(PreconditionError):
        pi_interval(10)


def test_interval_comparisons():
    interval = CertifiedInterval(Fraction(1), Fraction(2))
    assert interval.greater_than(Fraction(1, 2))
    assert not interval.greater_than(2)
    assert interval.at_least(1)
    with pytest.raises(InconclusiveComparisonError):
        interval.greater_than(Fraction(3, 2))
    with pytest.raises(InconclusiveComparisonError):
        interval.at_least(Fraction(3, 2))


def test_interval_division_by_zero_interval():
    with pytest.raises(InconclusiveComparisonError):
        _ = CertifiedInterval.exact(1) / CertifiedInterval(Fraction(-1), Fraction(1))


def test_interval_arithmetic_contains_value():
    pi = pi_interval()
    area = pi * 4
    assert area.lo <= 4 * Fraction(math.pi) + Fraction(1, 10**12)
    assert (CertifiedInterval.exact(1) / pi).hi < Fraction(1, 3)
    assert (pi - pi).lo <= 0 <= (pi - pi).hi


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        CertifiedInterval(Fraction(2), Fraction(1))


def test_stirling_check():
    results = stirling_check(60)
    assert [p for p, _ in results] == list(range(1, 61))
    assert all(holds for _, holds in results)
    with pytest.raises(PreconditionError):
        stirling_holds(0)


def test_as_text():
    assert as_text(Fraction(15, 4)) == "15/4"
    assert as_text(Fraction(8, 4)) == "2"
    assert as_text(-3) == "-3"
