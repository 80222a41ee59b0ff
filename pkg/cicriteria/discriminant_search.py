"""Minimal positive discriminants allowed by the integrality conditions.

The search walks Delta = 3, 4, 7, 8, 11, ... (the positive integers congruent
to 0 or 3 mod 4) and maps each value to its unique normalised Chern data, so
the first integral hit is the minimum. Minima are integrality-only: no
stability constraint is imposed on the witnesses.
"""
import hashlib
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

import yaml
from pydantic import BaseModel, Field

from cicriteria.errors import (
    InconclusiveComparisonError,
    PreconditionError,
    SearchInvariantError,
)
from cicriteria.exact_arith import (
    DEFAULT_DIGITS,
    CertifiedInterval,
    as_text,
    factorial,
    pi_interval,
)
from cicriteria.rr_integrality import BundleOnProjSpace, is_integral_all_twists

CACHE_SCHEMA = "cicriteria/deltamin-cache/1"

logger = logging.getLogger("cicriteria.info")


class SchwartzenbergerRecord(BaseModel):
    p: int = Field(ge=1)
    c1: int = Field(ge=0, le=1)
    d: int
    delta: int
    integral: bool

    @classmethod
    def evaluate(cls, p: int, c1: int, d: int) -> "SchwartzenbergerRecord":
        bundle = BundleOnProjSpace(p=p, c1=c1, d=d)
        return cls(
            p=p,
            c1=c1,
            d=d,
            delta=bundle.discriminant,
            integral=is_integral_all_twists(bundle),
        )


class DeltaMinRow(BaseModel):
    p: int
    delta_min: int
    c1: int
    d: int

    @property
    def witness(self) -> tuple[int, int]:
        return self.c1, self.d


class DeltaMinTable(BaseModel):
    rows: list[DeltaMinRow] = Field(default_factory=list)

    def row(self, p: int) -> DeltaMinRow:
        for row in self.rows:
            if row.p == p:
                return row
        raise KeyError(p)


def chern_data_for(delta: int) -> tuple[int, int]:
    """Normalised (c1, d) with 4d - c1^2 == delta."""
    residue = delta % 4
    if residue == 0:
        return 0, delta // 4
    if residue == 3:
        return 1, (delta + 1) // 4
    raise PreconditionError(f"{delta} is not a discriminant (must be 0 or 3 mod 4)")


def _candidates(limit: int) -> Iterator[int]:
    delta = 3
    while delta <= limit:
        yield delta
        delta += 1 if delta % 4 == 3 else 3


@lru_cache(maxsize=None)
def delta_min(p: int) -> tuple[int, tuple[int, int]]:
    """Smallest positive discriminant with integral Euler characteristics on P^p."""
    if p < 1:
        raise PreconditionError(f"p must be >= 1, got {p}")
    # c1 = 0, d = (p!)^2 is integral: every power sum past p_0 carries (p!)^2
    limit = 4 * factorial(p) ** 2
    for delta in _candidates(limit):
        c1, d = chern_data_for(delta)
        if is_integral_all_twists(BundleOnProjSpace(p=p, c1=c1, d=d)):
            logger.info("[delta_min][p:%s][delta:%s][c1:%s][d:%s]", p, delta, c1, d)
            return delta, (c1, d)
    raise SearchInvariantError(f"no integral discriminant below {limit} on P^{p}")


def _row(p: int) -> DeltaMinRow:
    delta, (c1, d) = delta_min(p)
    return DeltaMinRow(p=p, delta_min=delta, c1=c1, d=d)


def _check_table(rows: list[DeltaMinRow]) -> None:
    for previous, current in zip(rows, rows[1:]):
        if current.delta_min < previous.delta_min:
            raise SearchInvariantError(
                f"delta_min decreases from p={previous.p} to p={current.p}"
            )


class DeltaMinCache:
    """Versioned YAML table of search results.

    Advisory only: rows with a bad checksum or a wrong schema are dropped and
    recomputed, and so is any row whose witness fails or that some smaller
    candidate undercuts. Saving writes a temporary file next to the target
    and renames it over the old one.
    """

    def __init__(self, path: Path):
        self.path = Path(path)

    @staticmethod
    def checksum(row: DeltaMinRow) -> str:
        payload = f"{CACHE_SCHEMA}|{row.p}|{row.delta_min}|{row.c1}|{row.d}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def load(self) -> dict[int, DeltaMinRow]:
        if not self.path.exists():
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as file:
                content = yaml.safe_load(file) or {}
        except (OSError, yaml.YAMLError) as exc:
            logger.warning("[cache][unreadable][%s]: %s", self.path, exc)
            return {}
        if not isinstance(content, dict) or content.get("schema") != CACHE_SCHEMA:
            logger.warning("[cache][schema-mismatch][%s]", self.path)
            return {}
        rows: dict[int, DeltaMinRow] = {}
        for entry in content.get("rows") or []:
            try:
                row = DeltaMinRow(
                    **{key: entry[key] for key in ("p", "delta_min", "c1", "d")}
                )
            except (KeyError, TypeError, ValueError):
                continue
            if entry.get("checksum") != self.checksum(row) or not self._valid(row):
                logger.warning("[cache][drop][p:%s]", row.p)
                continue
            rows[row.p] = row
        return self._minimal_rows(rows)

    @staticmethod
    def _minimal_rows(rows: dict[int, DeltaMinRow]) -> dict[int, DeltaMinRow]:
        # integrality on P^p restricts to P^(p-1), so a trusted minimum for
        # p - 1 is a floor for p and only the gap above it needs a search
        trusted: dict[int, DeltaMinRow] = {}
        for p in sorted(rows):
            row = rows[p]
            floor = trusted[p - 1].delta_min if p - 1 in trusted else 3
            undercut = any(
                is_integral_all_twists(BundleOnProjSpace(p=p, c1=c1, d=d))
                for c1, d in (
                    chern_data_for(delta)
                    for delta in _candidates(row.delta_min - 1)
                    if delta >= floor
                )
            )
            if undercut:
                logger.warning("[cache][drop][p:%s][not-minimal]", p)
                continue
            trusted[p] = row
        return trusted

    @staticmethod
    def _valid(row: DeltaMinRow) -> bool:
        bundle = BundleOnProjSpace(p=row.p, c1=row.c1, d=row.d)
        return bundle.discriminant == row.delta_min > 0 and is_integral_all_twists(
            bundle
        )

    def save(self, rows: dict[int, DeltaMinRow]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        document = {
            "schema": CACHE_SCHEMA,
            "rows": [
                {**rows[p].model_dump(), "checksum": self.checksum(rows[p])}
                for p in sorted(rows)
            ],
        }
        fd, tmp = tempfile.mkstemp(
            prefix=self.path.name + ".", suffix=".tmp", dir=self.path.parent
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as file:
                yaml.safe_dump(document, file, sort_keys=False)
                file.flush()
                os.fsync(file.fileno())
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.info("[cache][saved][%s][rows:%s]", self.path, len(rows))


def schneider_table(
    p_max: int, cache: Optional[DeltaMinCache] = None, workers: int = 1
) -> DeltaMinTable:
    if p_max < 1:
        raise PreconditionError(f"p_max must be >= 1, got {p_max}")
    known = cache.load() if cache is not None else {}
    missing = [p for p in range(1, p_max + 1) if p not in known]
    logger.info("[schneider_table][p_max:%s][cached:%s]", p_max, p_max - len(missing))
    if missing:
        if workers > 1 and len(missing) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                computed = list(pool.map(_row, missing))
        else:
            computed = [_row(p) for p in missing]
        for row in computed:
            known[row.p] = row
        if cache is not None:
            cache.save(known)
    rows = [known[p] for p in range(1, p_max + 1)]
    _check_table(rows)
    return DeltaMinTable(rows=rows)


class PropBoundEntry(BaseModel):
    p: int
    delta_min: int
    bound: str
    margin: str
    passed: bool


class PropBoundReport(BaseModel):
    entries: list[PropBoundEntry] = Field(default_factory=list)

    @property
    def failures(self) -> list[PropBoundEntry]:
        return [entry for entry in self.entries if not entry.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_prop_bound(p_from: int, p_to: int) -> PropBoundReport:
    """delta_min(p) > p^2 / 6 for every p in [p_from, p_to]."""
    if not 4 <= p_from <= p_to:
        raise PreconditionError(f"need 4 <= p_from <= p_to, got {p_from}, {p_to}")
    report = PropBoundReport()
    for p in range(p_from, p_to + 1):
        delta, _ = delta_min(p)
        bound = Fraction(p * p, 6)
        entry = PropBoundEntry(
            p=p,
            delta_min=delta,
            bound=as_text(bound),
            margin=as_text(delta - bound),
            passed=delta > bound,
        )
        if not entry.passed:
            logger.error("[prop-sch][violation][p:%s][delta_min:%s]", p, delta)
        report.entries.append(entry)
    return report


# smallest l for which the quartic estimate beats the linear bound
CLAIMED_CROSSOVER = 18


def holme_schneider_bound(ell: int) -> int:
    return (ell - 1) * (ell + 5)


def quartic_estimate_beats(ell: int, digits: int = DEFAULT_DIGITS) -> bool:
    """Whether l^2 (l-1)^2 / (24 pi^2) > (l-1)(l+5), decided on intervals."""
    pi = pi_interval(digits)
    estimate = CertifiedInterval.exact(ell * ell * (ell - 1) ** 2) / (pi**2 * 24)
    return estimate.greater_than(holme_schneider_bound(ell))


def crossover_ell(digits: int = DEFAULT_DIGITS, ell_max: int = 10_000) -> int:
    for ell in range(1, ell_max + 1):
        if quartic_estimate_beats(ell, digits):
            return ell
    raise InconclusiveComparisonError(f"no crossover below l = {ell_max}")
