"""Exact rational arithmetic shared by every computation in the package.

Fractions are :class:`fractions.Fraction`; univariate polynomials are dense
coefficient tuples. Transcendental constants only ever appear as certified
rational enclosures obtained from mpmath's interval context, and every
comparison against them either decides or raises.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from mpmath import iv, libmp

from cicriteria.errors import InconclusiveComparisonError, PreconditionError

Number = Union[int, Fraction]

DEFAULT_DIGITS = 40
MIN_DIGITS = 30

logger = logging.getLogger("cicriteria.info")


def _canonical(coefficients: Iterable[Number]) -> tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in one indeterminate; ``coefficients[i]`` multiplies x**i."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _canonical(self.coefficients))

    @classmethod
    def of(cls, *coefficients: Number) -> "IntPolynomial":
        return cls(tuple(Fraction(c) for c in coefficients))

    @property
    def degree(self) -> int:
        # the zero polynomial reports -1
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coefficients:
            return Fraction(0)
        return self.coefficients[-1]

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        left = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        right = other.coefficients + (Fraction(0),) * (size - len(other.coefficients))
        return IntPolynomial(tuple(a + b for a, b in zip(left, right)))

    def __mul__(self, other: Union["IntPolynomial", Number]) -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return IntPolynomial(tuple(c * other for c in self.coefficients))
        if not self.coefficients or not other.coefficients:
            return IntPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__


def factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def scaled_binomial_coefficients(top_shift: int, p: int) -> tuple[int, ...]:
    """Integer coefficients of p! * binomial_poly(top_shift, p)."""
    if p < 1:
        raise PreconditionError(f"binomial polynomial needs p >= 1, got {p}")
    coeffs = [1]
    for i in range(1, p + 1):
        shift = top_shift + i
        nxt = [0] * (len(coeffs) + 1)
        for power, c in enumerate(coeffs):
            nxt[power] += c * shift
            nxt[power + 1] += c
        coeffs = nxt
    return tuple(coeffs)


def binomial_poly(top_shift: int, p: int) -> IntPolynomial:
    """x -> (x+top_shift+p)(x+top_shift+p-1)...(x+top_shift+1) / p!"""
    denominator = factorial(p)
    return IntPolynomial(
        tuple(
            Fraction(c, denominator)
            for c in scaled_binomial_coefficients(top_shift, p)
        )
    )


def power_sums(e1: Number, e2: Number, j_max: int) -> list[Number]:
    """Newton power sums of the two roots of x^2 - e1*x + e2.

    Integer inputs produce integer outputs, which the integrality search
    relies on to stay in integer arithmetic.
    """
    if j_max < 0:
        raise PreconditionError(f"j_max must be non-negative, got {j_max}")
    sums: list[Number] = [2, e1]
    for _ in range(2, j_max + 1):
        sums.append(e1 * sums[-1] - e2 * sums[-2])
    return sums[: j_max + 1]


@dataclass(frozen=True)
class CertifiedInterval:
    """Closed rational interval [lo, hi] known to contain a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Number) -> "CertifiedInterval":
        return cls(Fraction(value), Fraction(value))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def _coerce(self, other: Union["CertifiedInterval", Number]) -> "CertifiedInterval":
        if isinstance(other, CertifiedInterval):
            return other
        return CertifiedInterval.exact(other)

    def __add__(self, other: Union["CertifiedInterval", Number]) -> "CertifiedInterval":
        o = self._coerce(other)
        return CertifiedInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "CertifiedInterval":
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other: Union["CertifiedInterval", Number]) -> "CertifiedInterval":
        return self + (-self._coerce(other))

    def __mul__(self, other: Union["CertifiedInterval", Number]) -> "CertifiedInterval":
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(
        self, other: Union["CertifiedInterval", Number]
    ) -> "CertifiedInterval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise InconclusiveComparisonError("division by an interval containing 0")
        return self * CertifiedInterval(1 / o.hi, 1 / o.lo)

    def __pow__(self, exponent: int) -> "CertifiedInterval":
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        if self.lo >= 0:
            return CertifiedInterval(self.lo**exponent, self.hi**exponent)
        result = CertifiedInterval.exact(1)
        for _ in range(exponent):
            result = result * self
        return result

    def greater_than(self, value: Union["CertifiedInterval", Number]) -> bool:
        o = self._coerce(value)
        if self.lo > o.hi:
            return True
        if self.hi <= o.lo:
            return False
        raise InconclusiveComparisonError(
            f"cannot decide [{float(self.lo)}, {float(self.hi)}] > "
            f"[{float(o.lo)}, {float(o.hi)}]"
        )

    def at_least(self, value: Union["CertifiedInterval", Number]) -> bool:
        o = self._coerce(value)
        if self.lo >= o.hi:
            return True
        if self.hi < o.lo:
            return False
        raise InconclusiveComparisonError(
            f"cannot decide [{float(self.lo)}, {float(self.hi)}] >= "
            f"[{float(o.lo)}, {float(o.hi)}]"
        )


@lru_cache(maxsize=None)
def _enclosure(name: str, digits: int) -> CertifiedInterval:
    if digits < MIN_DIGITS:
        raise PreconditionError(f"need at least {MIN_DIGITS} digits, got {digits}")
    # iv has no workdps manager; precision is a context attribute
    saved = iv.dps
    iv.dps = digits + 10
    try:
        lo, hi = getattr(iv, name)._mpi_
    finally:
        iv.dps = saved
    interval = CertifiedInterval(
        Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))
    )
    if interval.width * 10**digits >= 1:
        raise InconclusiveComparisonError(
            f"{name} enclosure too wide at {digits} digits"
        )
    logger.debug("[enclosure][%s][digits:%s]", name, digits)
    return interval


def pi_interval(digits: int = DEFAULT_DIGITS) -> CertifiedInterval:
    return _enclosure("pi", digits)


def e_interval(digits: int = DEFAULT_DIGITS) -> CertifiedInterval:
    return _enclosure("e", digits)


def stirling_holds(p: int, digits: int = DEFAULT_DIGITS) -> bool:
    """p! >= sqrt(2*pi*p) * (p/e)^p, decided on squares.

    Equivalent form: (p!)^2 * e^(2p) >= 2*pi*p^(2p+1).
    """
    if p < 1:
        raise PreconditionError(f"Stirling check needs p >= 1, got {p}")
    lhs = e_interval(digits) ** (2 * p) * factorial(p) ** 2
    rhs = pi_interval(digits) * (2 * p ** (2 * p + 1))
    return lhs.at_least(rhs)


def stirling_check(p_max: int, digits: int = DEFAULT_DIGITS) -> list[tuple[int, bool]]:
    return [(p, stirling_holds(p, digits)) for p in range(1, p_max + 1)]


def as_text(value: Number) -> str:
    """JSON-friendly rendering: integers stay bare, fractions become 'a/b'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"

