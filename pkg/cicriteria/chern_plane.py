"""Arithmetic on the (d, n)-plane of a codimension-two subvariety.

``d`` is the degree of X (``[X] = d * chi^2``) and ``n`` the twist of the
determinant of its normal bundle. Decisions here are exact: the angle bound
on the Chern roots is tested through integer Segre numbers and the degree
bound through rational enclosures of pi.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from cicriteria.discriminant_search import delta_min
from cicriteria.errors import DataUnavailableError, PreconditionError
from cicriteria.exact_arith import DEFAULT_DIGITS, pi_interval
from cicriteria.root_systems import VarietyInvariants

logger = logging.getLogger("cicriteria.info")


@dataclass(frozen=True)
class BundleNumerics:
    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 1:
            raise PreconditionError(
                f"need d >= 1 and n >= 1, got d={self.d}, n={self.n}"
            )


def discriminant(b: BundleNumerics) -> int:
    return 4 * b.d - b.n * b.n


def e_value(b: BundleNumerics, k: int) -> int:
    return b.d - b.n * k + k * k


def e_nonneg_witness(b: BundleNumerics) -> Optional[int]:
    """Smallest 1 <= k <= n/2 with e(k) >= 0, for a non-positive discriminant.

    e decreases on [1, n/2], so the answer is 1 whenever e(1) >= 0 and there
    is no witness otherwise.
    """
    if discriminant(b) > 0:
        raise PreconditionError(
            f"witness needs discriminant <= 0, got {discriminant(b)}"
        )
    for k in range(1, b.n // 2 + 1):
        if e_value(b, k) >= 0:
            return k
    return None


def segre_numbers(b: BundleNumerics, j_max: int) -> list[int]:
    if j_max < 0:
        raise PreconditionError(f"j_max must be non-negative, got {j_max}")
    values = [1, b.n]
    for _ in range(2, j_max + 1):
        values.append(b.n * values[-1] - b.d * values[-2])
    return values[: j_max + 1]


def angle_exclusion(b: BundleNumerics, p_v: int) -> bool:
    """True when the Segre numbers s_1 .. s_{p_v - 2} are not all positive."""
    if discriminant(b) <= 0:
        raise PreconditionError(
            f"angle test needs discriminant > 0, got {discriminant(b)}"
        )
    if p_v < 3:
        raise PreconditionError(f"angle test needs p(V) >= 3, got {p_v}")
    return any(s <= 0 for s in segre_numbers(b, p_v - 2)[1:])


def degree_lower_bound(
    inv: VarietyInvariants, sharp: bool = False, digits: int = DEFAULT_DIGITS
) -> Fraction:
    """Degree at or below which no subvariety with positive discriminant exists.

    The unsharp form is sp^2 (p-1)^2 / 240. The sharp form replaces sp^2/60
    with delta_min(sp)/pi^2 and is rounded down through the pi enclosure, so
    it stays a valid lower bound. Lower-bound table values for sp are used as
    they are, which only weakens the result.
    """
    if inv.p_pos < 2:
        raise PreconditionError(f"degree bound needs p(V) >= 2, got {inv.p_pos}")
    if inv.sp is None:
        raise DataUnavailableError(
            f"data unavailable: sp_V is not tabulated for {inv.label}"
        )
    spread = (inv.p_pos - 1) ** 2
    if not sharp:
        return Fraction(inv.sp * inv.sp * spread, 240)
    delta, _ = delta_min(inv.sp)
    pi = pi_interval(digits)
    bound = Fraction(delta * spread) / (4 * pi.hi * pi.hi)
    logger.debug("[degree_lower_bound][%s][sharp][delta_min:%s]", inv.label, delta)
    return bound
