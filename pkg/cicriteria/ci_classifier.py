"""Complete-intersection decisions for codimension-two subvarieties of G/P.

Criteria are evaluated in a fixed order and every applicable one is kept in
the audit trail; the verdict cites the first that is satisfied:

    hart-i, hart-ii       degree thresholds, independent of n
    ran-i, ran-ii         discriminant <= 0
    thmDgt-bound          discriminant > 0, d at or below sp^2 (p-1)^2 / 240
    segre-positivity      discriminant > 0, some s_j <= 0 with j <= p - 2
    thmDgt-sharp          discriminant > 0, d at or below the delta_min form

Both degree bounds report the exclusion reason ``thmDgt-bound``.
"""
import logging
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, Field

from cicriteria.chern_plane import (
    BundleNumerics,
    angle_exclusion,
    degree_lower_bound,
    discriminant,
    e_nonneg_witness,
    e_value,
)
from cicriteria.errors import DataUnavailableError, PreconditionError
from cicriteria.exact_arith import DEFAULT_DIGITS, as_text
from cicriteria.root_systems import (
    VarietyDescriptor,
    VarietyInvariants,
    classical_descriptors,
    codim_bound,
    invariants,
)

logger = logging.getLogger("cicriteria.info")

HART_EXCEPTIONS = frozenset(
    {
        VarietyDescriptor(family="D", rank=6, node=3),
        VarietyDescriptor(family="B", rank=6, node=3),
        VarietyDescriptor(family="C", rank=6, node=3),
    }
)

HART_RANGE_NOTE = (
    "hart-ii applied for 6 <= l <= 10; "
    "a narrower 7 <= l <= 10 range is also quoted for this criterion"
)
EXCEPTIONAL_SP_NOTE = (
    "hart on an exceptional group relies on sp_V, tabulated only as a lower bound"
)


class Region(str, Enum):
    EMPTY_BELOW_EXCLUSION = "EmptyBelowExclusion"
    COMET = "CometRegion"
    CHECKER = "CheckerRegion"
    HORIZONTAL = "HorizLines_e_m_neg"
    GRID = "Grid_nLow_eNeg"
    VERTICAL = "VertLines_nLow"
    UNKNOWN = "UnknownRegion"


class VerdictKind(str, Enum):
    COMPLETE_INTERSECTION = "CompleteIntersection"
    EXCLUDED = "ExcludedNoSuchSubvariety"
    UNKNOWN = "Unknown"


class Outcome(str, Enum):
    SATISFIED = "satisfied"
    NOT_SATISFIED = "not satisfied"
    UNAVAILABLE = "unavailable"


InputValue = Union[int, str, bool, None]


class CriterionCheck(BaseModel):
    criterion: str
    inputs: dict[str, InputValue] = Field(default_factory=dict)
    outcome: Outcome
    witness: Optional[int] = None

    @property
    def satisfied(self) -> bool:
        return self.outcome == Outcome.SATISFIED


class Verdict(BaseModel):
    kind: VerdictKind
    criterion: Optional[str] = None
    reason: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == VerdictKind.COMPLETE_INTERSECTION:
            return f"{self.kind.value}({self.criterion})"
        if self.kind == VerdictKind.EXCLUDED:
            return f"{self.kind.value}({self.reason})"
        return self.kind.value


class ClassificationResult(BaseModel):
    delta: int
    region: Region
    verdict: Verdict
    applied: list[CriterionCheck] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)


CI_CRITERIA = ("hart-i", "hart-ii", "ran-i", "ran-ii")
EXCLUSIONS = {
    "thmDgt-bound": "thmDgt-bound",
    "segre-positivity": "segre-positivity",
    "thmDgt-sharp": "thmDgt-bound",
}


def _check(criterion: str, holds: bool, **inputs: InputValue) -> CriterionCheck:
    outcome = Outcome.SATISFIED if holds else Outcome.NOT_SATISFIED
    return CriterionCheck(criterion=criterion, inputs=inputs, outcome=outcome)


def _unavailable(criterion: str, **inputs: InputValue) -> CriterionCheck:
    return CriterionCheck(
        criterion=criterion, inputs=inputs, outcome=Outcome.UNAVAILABLE
    )


def _hart_checks(
    desc: VarietyDescriptor, inv: VarietyInvariants, d: int, notes: list[str]
) -> list[CriterionCheck]:
    ell, m = desc.rank, inv.m
    if ell >= 11:
        return [_check("hart-i", d <= m * m, rank=ell, m=m, d=d, threshold=m * m)]
    if 6 <= ell <= 10:
        excepted = desc in HART_EXCEPTIONS
        notes.append(HART_RANGE_NOTE)
        return [
            _check(
                "hart-ii",
                not excepted and 10 * d <= 3 * m * m,
                rank=ell,
                m=m,
                d=d,
                threshold=as_text(Fraction(3 * m * m, 10)),
                excepted=excepted,
            )
        ]
    return []


def _ran_checks(inv: VarietyInvariants, b: BundleNumerics) -> list[CriterionCheck]:
    m, d, n = inv.m, b.d, b.n
    if m < 1:
        return [
            _unavailable("ran-i", m=m, d=d, n=n),
            _unavailable("ran-ii", m=m, d=d, n=n),
        ]
    ran_ii = _check("ran-ii", n <= 2 * m, m=m, d=d, n=n)
    ran_ii.witness = e_nonneg_witness(b)
    return [_check("ran-i", d + m * m <= n * m, m=m, d=d, n=n), ran_ii]


def _exclusion_checks(
    inv: VarietyInvariants, b: BundleNumerics, digits: int
) -> list[CriterionCheck]:
    checks = []
    if inv.sp is None:
        checks.append(_unavailable("thmDgt-bound", d=b.d, sp=None, p=inv.p_pos))
    else:
        bound = degree_lower_bound(inv, sharp=False)
        checks.append(
            _check(
                "thmDgt-bound",
                b.d <= bound,
                d=b.d,
                sp=inv.sp,
                p=inv.p_pos,
                bound=as_text(bound),
            )
        )
        if checks[-1].satisfied:
            return checks
    if inv.p_pos >= 3:
        checks.append(
            _check(
                "segre-positivity",
                angle_exclusion(b, inv.p_pos),
                d=b.d,
                n=b.n,
                p=inv.p_pos,
            )
        )
    else:
        checks.append(_unavailable("segre-positivity", d=b.d, n=b.n, p=inv.p_pos))
    if checks[-1].satisfied:
        return checks
    if inv.sp is None:
        checks.append(_unavailable("thmDgt-sharp", d=b.d, sp=None, p=inv.p_pos))
    else:
        bound = degree_lower_bound(inv, sharp=True, digits=digits)
        checks.append(
            _check(
                "thmDgt-sharp",
                b.d <= bound,
                d=b.d,
                sp=inv.sp,
                p=inv.p_pos,
                bound=as_text(bound),
            )
        )
    return checks


def region_of(
    inv: VarietyInvariants, b: BundleNumerics, exclusions: list[CriterionCheck]
) -> Region:
    if discriminant(b) > 0:
        if any(check.satisfied for check in exclusions):
            return Region.EMPTY_BELOW_EXCLUSION
        return Region.COMET if inv.sp is None else Region.CHECKER
    low_n = b.n <= 2 * inv.m
    if e_value(b, inv.m) <= 0:
        return Region.GRID if low_n else Region.HORIZONTAL
    return Region.VERTICAL if low_n else Region.UNKNOWN


def _verdict(applied: list[CriterionCheck]) -> Verdict:
    for check in applied:
        if check.satisfied and check.criterion in CI_CRITERIA:
            return Verdict(
                kind=VerdictKind.COMPLETE_INTERSECTION, criterion=check.criterion
            )
    for check in applied:
        if check.satisfied and check.criterion in EXCLUSIONS:
            return Verdict(
                kind=VerdictKind.EXCLUDED, reason=EXCLUSIONS[check.criterion]
            )
    return Verdict(kind=VerdictKind.UNKNOWN)


def evaluate(
    inv: VarietyInvariants,
    desc: VarietyDescriptor,
    d: int,
    n: int,
    digits: int = DEFAULT_DIGITS,
) -> ClassificationResult:
    """Classify a lattice point without checking the Picard condition."""
    b = BundleNumerics(d=d, n=n)
    delta = discriminant(b)
    notes = list(inv.notes)
    applied = _hart_checks(desc, inv, d, notes)
    if applied and desc.family == "E":
        notes.append(EXCEPTIONAL_SP_NOTE)
    exclusions: list[CriterionCheck] = []
    if delta <= 0:
        applied += _ran_checks(inv, b)
    else:
        exclusions = _exclusion_checks(inv, b, digits)
        applied += exclusions
    return ClassificationResult(
        delta=delta,
        region=region_of(inv, b, exclusions),
        verdict=_verdict(applied),
        applied=applied,
        notes=notes,
    )


def classify(
    desc: VarietyDescriptor, d: int, n: int, digits: int = DEFAULT_DIGITS
) -> ClassificationResult:
    inv = invariants(desc)
    if not inv.picard_iso:
        raise PreconditionError(
            f"Pic(V) -> Pic(X) is not known to be an isomorphism for {inv.label}"
        )
    result = evaluate(inv, desc, d, n, digits)
    logger.info(
        "[classify][%s][d:%s][n:%s][delta:%s][%s]",
        inv.label,
        d,
        n,
        result.delta,
        result.verdict,
    )
    return result


def homog_split_ci(desc: VarietyDescriptor, delta_codim: int) -> bool:
    if delta_codim < 2:
        raise PreconditionError(f"codimension must be >= 2, got {delta_codim}")
    bound = codim_bound(desc)
    if bound is None:
        raise DataUnavailableError(
            f"data unavailable: no codimension bound for {desc.dynkin}"
        )
    return delta_codim <= bound


def generators_ci(ell: int, delta_codim: int, a: int) -> bool:
    """Ideal generated by ``a`` ordered sections on a rank-``ell`` G/P."""
    if a < delta_codim:
        raise PreconditionError(
            f"{a} generators cannot cut out codimension {delta_codim}"
        )
    if ell < 7 or 4 * delta_codim > ell + 1:
        return False
    return 2 * a <= ell + 1 - 2 * delta_codim or a <= ell + 1 - 4 * delta_codim


def hauptlemma_split(
    ell: int,
    delta_codim: int,
    a: int,
    e: Optional[int] = None,
    f: Optional[int] = None,
) -> bool:
    """Splitting test for a rank-``a`` sum of ordered line bundles.

    With ``e`` and ``f`` the ranks of kernel and image are explicit. Without
    them the image is the conormal bundle itself, so f = delta_codim and
    e = a - delta_codim.
    """
    if (e is None) != (f is None):
        raise PreconditionError("give both e and f, or neither")
    if e is None or f is None:
        if a < delta_codim:
            raise PreconditionError(
                f"{a} generators cannot cut out codimension {delta_codim}"
            )
        e, f = a - delta_codim, delta_codim
    if a != e + f:
        raise PreconditionError(f"rank mismatch: a={a} but e + f = {e + f}")
    return 3 * delta_codim + f + a <= ell + 1 or 3 * delta_codim + e + a <= ell + 1


class HartThresholdEntry(BaseModel):
    dynkin: str
    rank: int
    node: int
    label: str
    status: str
    threshold: Optional[int] = None
    bound: Optional[str] = None
    reason: Optional[str] = None


class HartThresholdReport(BaseModel):
    entries: list[HartThresholdEntry] = Field(default_factory=list)

    @property
    def failures(self) -> list[HartThresholdEntry]:
        return [entry for entry in self.entries if entry.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures


def _entry(desc: VarietyDescriptor, status: str, **fields) -> HartThresholdEntry:
    return HartThresholdEntry(
        dynkin=desc.dynkin,
        rank=desc.rank,
        node=desc.node,
        label=desc.label,
        status=status,
        **fields,
    )


def verify_hart_thresholds(
    rank_max: int, digits: int = DEFAULT_DIGITS
) -> HartThresholdReport:
    """Every degree up to the hart threshold lies under a degree bound."""
    if rank_max < 6:
        raise PreconditionError(f"hart thresholds start at rank 6, got {rank_max}")
    report = HartThresholdReport()
    for desc in classical_descriptors(rank_max, rank_min=6):
        if desc in HART_EXCEPTIONS:
            report.entries.append(_entry(desc, "skipped", reason="listed exception"))
            continue
        try:
            inv = invariants(desc)
        except DataUnavailableError as exc:
            report.entries.append(_entry(desc, "skipped", reason=str(exc)))
            continue
        if not inv.picard_iso:
            report.entries.append(_entry(desc, "skipped", reason="picard condition"))
            continue
        m = inv.m
        threshold = m * m if desc.rank >= 11 else (3 * m * m) // 10
        bound = degree_lower_bound(inv, sharp=False)
        if threshold > bound:
            bound = max(bound, degree_lower_bound(inv, sharp=True, digits=digits))
        status = "pass" if threshold <= bound else "fail"
        if status == "fail":
            logger.error("[hart][violation][%s][threshold:%s]", desc.label, threshold)
        report.entries.append(
            _entry(desc, status, threshold=threshold, bound=as_text(bound))
        )
    return report
