import math
import random
from fractions import Fraction
from functools import partial

import pytest

from cicriteria.errors import PreconditionError
from cicriteria.rr_integrality import (
    BundleOnProjSpace,
    euler_char,
    is_integral_all_twists,
    shifted_euler_char,
    verify_closed_forms,
)


@pytest.mark.parametrize(
    "p,c1,d,k,expected",
    [
        (2, 0, 0, 0, 2),
        (2, 0, 3, 0, -1),
        (4, 0, 3, -2, 1),
    ],
)
def test_euler_char(p, c1, d, k, expected):
    assert euler_char(BundleOnProjSpace(p=p, c1=c1, d=d), k) == expected


def test_euler_char_on_plane_closed_form():
    # (k + 1)(k + 2) - d for c1 = 0 on P^2
    for d in range(-5, 6):
        bundle = BundleOnProjSpace(p=2, c1=0, d=d)
        for k in range(-4, 5):
            assert euler_char(bundle, k) == (k + 1) * (k + 2) - d


def _difference(values, order, start):
    return sum(
        (-1) ** (order - i) * math.comb(order, i) * values(start + i)
        for i in range(order + 1)
    )


@pytest.mark.parametrize("p", range(1, 9))
@pytest.mark.parametrize("c1", [0, 1])
def test_euler_char_is_degree_p_in_twist(p, c1):
    # two line-bundle summands, each binom(k + p + root, p)
    for d in range(-5, 30):
        bundle = BundleOnProjSpace(p=p, c1=c1, d=d)
        chi = partial(euler_char, bundle)
        for start in (-p - 2, 0, 7):
            assert _difference(chi, p, start) == 2, (p, c1, d)
            assert _difference(chi, p + 1, start) == 0, (p, c1, d)


@pytest.mark.parametrize(
    "p,c1,d,expected",
    [
        (2, 0, 5, True),
        (4, 0, 1, False),
        (4, 0, 3, True),
    ],
)
def test_is_integral_all_twists(p, c1, d, expected):
    assert is_integral_all_twists(BundleOnProjSpace(p=p, c1=c1, d=d)) is expected


def test_non_integral_value_is_a_sixth():
    assert euler_char(BundleOnProjSpace(p=4, c1=0, d=1), -2) == Fraction(1, 6)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p": 0, "c1": 0, "d": 1},
        {"p": 3, "c1": 2, "d": 1},
        {"p": 3, "c1": -1, "d": 1},
    ],
)
def test_bundle_validation(kwargs):
    with pytest.raises(PreconditionError):
        BundleOnProjSpace(**kwargs)


def test_discriminant():
    assert BundleOnProjSpace(p=4, c1=0, d=3).discriminant == 12
    assert BundleOnProjSpace(p=2, c1=1, d=1).discriminant == 3


def test_finite_check_agrees_with_direct_check():
    rng = random.Random(20240611)
    for _ in range(500):
        p = rng.randint(1, 8)
        c1 = rng.randint(0, 1)
        d = rng.randint(-100, 100)
        bundle = BundleOnProjSpace(p=p, c1=c1, d=d)
        direct = all(
            euler_char(bundle, k).denominator == 1 for k in range(-3 * p, 3 * p + 1)
        )
        assert is_integral_all_twists(bundle) is direct, (p, c1, d)


def test_integrality_restricts_to_hyperplanes():
    for p in range(3, 13):
        for c1 in (0, 1):
            for d in range(-20, 201):
                if is_integral_all_twists(BundleOnProjSpace(p=p, c1=c1, d=d)):
                    lower = BundleOnProjSpace(p=p - 1, c1=c1, d=d)
                    assert is_integral_all_twists(lower), (p, c1, d)


@pytest.mark.parametrize(
    "p,c1,d,k,value",
    [
        (4, 0, 3, -2, Fraction(1)),
        (4, 1, 1, -2, Fraction(-1, 4)),
        (3, 1, 2, -2, Fraction(-1)),
        (1, 1, 5, -1, Fraction(1)),
    ],
)
def test_shifted_euler_char(p, c1, d, k, value):
    assert shifted_euler_char(BundleOnProjSpace(p=p, c1=c1, d=d)) == (k, value)


def test_shifted_euler_char_matches_direct_value():
    for p in range(1, 11):
        for c1 in (0, 1):
            for d in range(-15, 16):
                bundle = BundleOnProjSpace(p=p, c1=c1, d=d)
                k, value = shifted_euler_char(bundle)
                assert euler_char(bundle, k) == value


def test_verify_closed_forms():
    assert verify_closed_forms(12) == []
    with pytest.raises(PreconditionError):
        verify_closed_forms(0)
