"""Riemann-Roch Euler characteristics of rank-2 bundles on projective space.

A normalised bundle on P^p is described by (p, c1, d) with c1 in {0, 1} and
d = c2. Its Chern roots r1, r2 satisfy r1 + r2 = c1 and r1 * r2 = d, so the
Euler characteristic of the twist by O(k) is q(r1) + q(r2) with
q = binomial_poly(k, p); the symmetric sum is expanded through power sums,
which keeps everything in integers up to a final division by p!.

Integrality of chi(F(k)) for every k (the Schwartzenberger conditions) is a
necessary condition for the Chern data to come from a bundle. Nothing here
checks stability or existence.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from cicriteria.errors import PreconditionError
from cicriteria.exact_arith import factorial, power_sums, scaled_binomial_coefficients

logger = logging.getLogger("cicriteria.info")


@dataclass(frozen=True)
class BundleOnProjSpace:
    p: int
    c1: int
    d: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise PreconditionError(f"projective dimension must be >= 1, got {self.p}")
        if self.c1 not in (0, 1):
            raise PreconditionError(f"c1 must be normalised to 0 or 1, got {self.c1}")

    @property
    def discriminant(self) -> int:
        return 4 * self.d - self.c1 * self.c1


@lru_cache(maxsize=4096)
def _root_power_sums(c1: int, d: int, p: int) -> tuple[int, ...]:
    return tuple(power_sums(c1, d, p))


def scaled_euler_char(bundle: BundleOnProjSpace, k: int) -> int:
    """p! * chi(F(k)), always an integer."""
    sums = _root_power_sums(bundle.c1, bundle.d, bundle.p)
    coeffs = scaled_binomial_coefficients(k, bundle.p)
    return sum(a * s for a, s in zip(coeffs, sums))


def euler_char(bundle: BundleOnProjSpace, k: int) -> Fraction:
    return Fraction(scaled_euler_char(bundle, k), factorial(bundle.p))


def is_integral_all_twists(bundle: BundleOnProjSpace) -> bool:
    # chi(F(k)) is a degree-p polynomial in k, integral everywhere as soon as
    # it is integral at p + 1 consecutive integers
    modulus = factorial(bundle.p)
    for k in range(bundle.p + 1):
        if scaled_euler_char(bundle, k) % modulus:
            return False
    return True


def shifted_euler_char(bundle: BundleOnProjSpace) -> tuple[int, Fraction]:
    """Closed-form chi(F(k)) at the twist that symmetrises the product.

    For p = 2q the twist is k = -q; for p = 2q + 1 it is k = -q when c1 = 0
    and k = -(q + 1) when c1 = 1. Returns the twist and the value.
    """
    p, c1, d = bundle.p, bundle.c1, bundle.d
    q, odd = divmod(p, 2)
    denominator = factorial(2 * q)
    if not odd:
        if c1 == 0:
            numerator = (-1) ** q * 2 * math.prod(d + i * i for i in range(q))
        else:
            numerator = (
                (-1) ** (q - 1)
                * 2
                * (q * q - d)
                * math.prod(d + i * i - i for i in range(1, q))
            )
        return -q, Fraction(numerator, denominator)
    if c1 == 0:
        numerator = (-1) ** q * 2 * math.prod(d + i * i for i in range(q))
        return -q, Fraction(numerator, denominator)
    numerator = (-1) ** q * math.prod(d + i * i - i for i in range(1, q + 1))
    return -(q + 1), Fraction(numerator, denominator)


def verify_closed_forms(p_max: int, d_max: int = 12) -> list[dict]:
    """Mismatches between shifted_euler_char and euler_char for p <= p_max."""
    if p_max < 1:
        raise PreconditionError(f"p_max must be >= 1, got {p_max}")
    mismatches = []
    for p in range(1, p_max + 1):
        for c1 in (0, 1):
            for d in range(-d_max, d_max + 1):
                bundle = BundleOnProjSpace(p=p, c1=c1, d=d)
                k, closed = shifted_euler_char(bundle)
                direct = euler_char(bundle, k)
                if closed != direct:
                    mismatches.append(
                        {
                            "p": p,
                            "c1": c1,
                            "d": d,
                            "k": k,
                            "closed": str(closed),
                            "direct": str(direct),
                        }
                    )
    logger.info("[closed_forms][p_max:%s][mismatches:%s]", p_max, len(mismatches))
    return mismatches
