"""Root systems and the invariants of G/P for a maximal parabolic P.

Simple roots use Bourbaki numbering::

    A_l   1 - 2 - ... - (l-1) - l
    B_l   1 - 2 - ... - (l-1) => l          (l short)
    C_l   1 - 2 - ... - (l-1) <= l          (l long)
    D_l   1 - 2 - ... - (l-2) - (l-1)
                          |
                          l
    E_l   1 - 3 - 4 - 5 - ... - l
                  |
                  2
    F_4   1 - 2 => 3 - 4                    (1, 2 long)
    G_2   1 <= 2                            (2 long)

Cartan entries are ``cartan[i, j] = <alpha_j, alpha_i^vee>``, so row ``k``
dotted with a root vector gives the pairing of that root with the coroot of
the marked node. Dimension and Fano index are computed from the positive
roots; p(V), sp_V and the Picard / codimension thresholds are stored table
data and are never guessed outside their tabulated range.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from cicriteria.errors import DataUnavailableError, InvalidDescriptorError

logger = logging.getLogger("cicriteria.info")

CLASSICAL = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

_PICARD_MIN_RANK = {"A": 6, "B": 4, "C": 6, "D": 5}
_CODIM_MIN_RANK = {"A": 6, "B": 5, "C": 6, "D": 5}
_EXCEPTIONAL_CODIM = {"E6": 2, "E7": 2, "E8": 3}
_EXCEPTIONAL_POSITIVITY = {"E6": 11, "E7": 17, "E8": 29}
_EXCEPTIONAL_SP = {"E6": 3, "E7": 4, "E8": 4}


def _split_dynkin(dynkin: str, rank: Optional[int]) -> tuple[str, int]:
    label = str(dynkin).strip().upper()
    if not label or label[0] not in "ABCDEFG":
        raise InvalidDescriptorError(f"unknown Dynkin type {dynkin!r}")
    family, suffix = label[0], label[1:]
    if suffix:
        if not suffix.isdigit():
            raise InvalidDescriptorError(f"unknown Dynkin type {dynkin!r}")
        if rank is not None and rank != int(suffix):
            raise InvalidDescriptorError(f"{dynkin} has rank {suffix}, got {rank}")
        rank = int(suffix)
    if rank is None:
        raise InvalidDescriptorError(f"rank missing for type {family}")
    if family in _FIXED_RANKS:
        if rank not in _FIXED_RANKS[family]:
            raise InvalidDescriptorError(f"no simple group of type {family}{rank}")
    elif rank < _MIN_RANK[family]:
        raise InvalidDescriptorError(
            f"type {family} needs rank >= {_MIN_RANK[family]}, got {rank}"
        )
    return family, rank


@dataclass(frozen=True)
class VarietyDescriptor:
    """G/P with G simple of the given type and P maximal at ``node``."""

    family: str
    rank: int
    node: int

    def __post_init__(self) -> None:
        family, rank = _split_dynkin(self.family, self.rank)
        object.__setattr__(self, "family", family)
        if not 1 <= self.node <= rank:
            raise InvalidDescriptorError(f"node must lie in 1..{rank}, got {self.node}")

    @classmethod
    def of(cls, dynkin: str, rank: Optional[int], node: int) -> "VarietyDescriptor":
        family, rank = _split_dynkin(dynkin, rank)
        return cls(family=family, rank=rank, node=node)

    @property
    def dynkin(self) -> str:
        if self.family in _FIXED_RANKS:
            return f"{self.family}{self.rank}"
        return self.family

    @property
    def label(self) -> str:
        ell, k = self.rank, self.node
        if self.family == "A":
            return f"P^{ell}" if k == 1 else f"Gr({k};{ell + 1})"
        if self.family == "B":
            return f"OGr({k};{2 * ell + 1})"
        if self.family == "C":
            return f"P^{2 * ell - 1}" if k == 1 else f"SGr({k};{2 * ell})"
        if self.family == "D":
            if k >= ell - 1:
                return f"OGr{'-' if k == ell - 1 else '+'}({ell};{2 * ell})"
            return f"OGr({k};{2 * ell})"
        return f"{self.dynkin}/P{k}"

    def as_dict(self) -> dict:
        return {"dynkin": self.dynkin, "rank": self.rank, "node": self.node}


class VarietyInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    dim_v: int = Field(ge=1)
    index: int = Field(ge=1)
    m: int
    p_pos: int = Field(ge=1)
    p_is_lower_bound: bool = False
    sp: Optional[int] = None
    sp_is_lower_bound: bool = False
    picard_iso: bool
    codim_bound: Optional[int] = None
    notes: tuple[str, ...] = ()


def _link(gram: np.ndarray, i: int, j: int, value: int) -> None:
    gram[i - 1, j - 1] = gram[j - 1, i - 1] = value


def _gram_matrix(family: str, rank: int) -> np.ndarray:
    gram = np.zeros((rank, rank), dtype=np.int64)
    np.fill_diagonal(gram, 2)
    if family == "A":
        for i in range(1, rank):
            _link(gram, i, i + 1, -1)
    elif family == "B":
        gram[: rank - 1, : rank - 1] *= 2
        for i in range(1, rank):
            _link(gram, i, i + 1, -2)
    elif family == "C":
        gram[rank - 1, rank - 1] = 4
        for i in range(1, rank - 1):
            _link(gram, i, i + 1, -1)
        _link(gram, rank - 1, rank, -2)
    elif family == "D":
        for i in range(1, rank - 1):
            _link(gram, i, i + 1, -1)
        _link(gram, rank - 2, rank, -1)
    elif family == "E":
        for i, j in ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)):
            if j <= rank:
                _link(gram, i, j, -1)
    elif family == "F":
        np.fill_diagonal(gram, (4, 4, 2, 2))
        _link(gram, 1, 2, -2)
        _link(gram, 2, 3, -2)
        _link(gram, 3, 4, -1)
    elif family == "G":
        np.fill_diagonal(gram, (2, 6))
        _link(gram, 1, 2, -3)
    return gram


@lru_cache(maxsize=None)
def _cartan(family: str, rank: int) -> np.ndarray:
    gram = _gram_matrix(family, rank)
    cartan = (2 * gram) // np.diag(gram)[:, None]
    cartan.setflags(write=False)
    return cartan


def cartan_matrix(dynkin: str, rank: Optional[int] = None) -> np.ndarray:
    return _cartan(*_split_dynkin(dynkin, rank)).copy()


@lru_cache(maxsize=None)
def _positive_roots(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    cartan = _cartan(family, rank)
    level = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = set(level)
    while level:
        raised_level = []
        for beta in level:
            vector = np.array(beta)
            for i in range(rank):
                # length of the alpha_i-string below beta
                down, probe = 0, list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) not in roots:
                        break
                    down += 1
                if down - int(cartan[i] @ vector) <= 0:
                    continue
                raised = beta[:i] + (beta[i] + 1,) + beta[i + 1 :]
                if raised not in roots:
                    roots.add(raised)
                    raised_level.append(raised)
        level = raised_level
    ordered = sorted(roots, key=lambda root: (sum(root), tuple(-c for c in root)))
    logger.debug("[positive_roots][%s%s][count:%s]", family, rank, len(ordered))
    return tuple(ordered)


def positive_roots(dynkin: str, rank: Optional[int] = None) -> list[tuple[int, ...]]:
    return list(_positive_roots(*_split_dynkin(dynkin, rank)))


def _roots_on_node(desc: VarietyDescriptor) -> np.ndarray:
    roots = np.array(_positive_roots(desc.family, desc.rank), dtype=np.int64)
    return roots[roots[:, desc.node - 1] > 0]


def variety_dim(desc: VarietyDescriptor) -> int:
    return int(_roots_on_node(desc).shape[0])


def fano_index(desc: VarietyDescriptor) -> int:
    """Pairing of the sum of the roots on the marked node with its coroot."""
    row = _cartan(desc.family, desc.rank)[desc.node - 1]
    return int((_roots_on_node(desc) @ row).sum())


def classical_dimension(desc: VarietyDescriptor) -> int:
    ell, k = desc.rank, desc.node
    if desc.family == "A":
        return k * (ell + 1 - k)
    if desc.family in ("B", "C"):
        return k * (4 * ell - 3 * k + 1) // 2
    if desc.family == "D":
        if k >= ell - 1:
            return ell * (ell - 1) // 2
        return k * (4 * ell - 3 * k - 1) // 2
    raise DataUnavailableError(f"no closed-form dimension for {desc.dynkin}")


def table_m(desc: VarietyDescriptor) -> int:
    ell, k = desc.rank, desc.node
    if desc.family == "A":
        return ell - 2
    if desc.family == "B":
        return 2 * ell - 3 if k == ell else 2 * ell - k - 3
    if desc.family == "C":
        return 2 * ell - k - 2
    if desc.family == "D":
        return 2 * ell - 5 if k >= ell - 1 else 2 * ell - k - 4
    raise DataUnavailableError(f"m(V) is not tabulated for {desc.dynkin}")


def _positivity(desc: VarietyDescriptor) -> tuple[int, bool]:
    ell, k = desc.rank, desc.node
    if desc.family == "A":
        return ell, False
    if desc.family == "B":
        return (2 * ell - 1 if k == ell else 2 * ell - 2), False
    if desc.family == "C":
        return 2 * ell - k, False
    if desc.family == "D":
        return 2 * ell - 3, False
    if desc.family == "E":
        return _EXCEPTIONAL_POSITIVITY[desc.dynkin], False
    if desc.family == "F":
        return 8, True
    raise DataUnavailableError(f"p(V) is not tabulated for {desc.dynkin}")


def _schubert_linear(desc: VarietyDescriptor) -> tuple[Optional[int], bool]:
    ell, k = desc.rank, desc.node
    if desc.family == "A":
        return max(k, ell - k + 1), False
    if desc.family in ("B", "C"):
        return (ell - 1 if k == ell else max(k, ell - k)), False
    if desc.family == "D":
        return (ell - 1 if k >= ell - 1 else max(k, ell - k)), False
    if desc.family == "E":
        return _EXCEPTIONAL_SP[desc.dynkin], True
    return None, False


def _picard_iso(desc: VarietyDescriptor) -> bool:
    if desc.family in _PICARD_MIN_RANK:
        return desc.rank >= _PICARD_MIN_RANK[desc.family]
    return desc.family in ("E", "F")


def codim_bound(desc: VarietyDescriptor) -> Optional[int]:
    if desc.family in _CODIM_MIN_RANK:
        if desc.rank < _CODIM_MIN_RANK[desc.family]:
            return 0
        return (desc.rank + 1) // 3
    return _EXCEPTIONAL_CODIM.get(desc.dynkin)


@lru_cache(maxsize=None)
def invariants(desc: VarietyDescriptor) -> VarietyInvariants:
    if desc.family == "G":
        raise DataUnavailableError(f"data unavailable: no table row for {desc.label}")
    if desc.family == "C" and desc.node == 1:
        raise DataUnavailableError(
            f"data unavailable: {desc.label} is a projective space, "
            f"use (A, {2 * desc.rank - 1}, 1)"
        )
    p_pos, p_lower = _positivity(desc)
    sp, sp_lower = _schubert_linear(desc)
    index = fano_index(desc)
    notes = []
    if desc.family == "D":
        notes.append("p(V) = 2l-3 is tabulated once for both D node families")
    if desc.family == "E":
        notes.append("m(V) derived from the root system; sp_V is a lower bound")
    if desc.family == "F":
        notes.append("p(V) tabulated as 8, 9, 10 without nodes; 8 used as lower bound")
        notes.append("sp_V not tabulated for F4")
    result = VarietyInvariants(
        label=desc.label,
        dim_v=variety_dim(desc),
        index=index,
        m=index - 3,
        p_pos=p_pos,
        p_is_lower_bound=p_lower,
        sp=sp,
        sp_is_lower_bound=sp_lower,
        picard_iso=_picard_iso(desc),
        codim_bound=codim_bound(desc),
        notes=tuple(notes),
    )
    logger.info(
        "[invariants][%s][node:%s][m:%s][p:%s][sp:%s]",
        desc.dynkin,
        desc.node,
        result.m,
        p_pos,
        sp,
    )
    return result


def classical_descriptors(
    rank_max: int, rank_min: int = 1
) -> Iterator[VarietyDescriptor]:
    for family in CLASSICAL:
        for rank in range(max(rank_min, _MIN_RANK[family]), rank_max + 1):
            for node in range(1, rank + 1):
                yield VarietyDescriptor(family=family, rank=rank, node=node)


class TableMismatch(BaseModel):
    dynkin: str
    rank: int
    node: int
    quantity: str
    computed: int
    expected: int


def cross_check_tables(rank_max: int) -> tuple[int, list[TableMismatch]]:
    """Root-system m(V) and dimension against the closed forms.

    Returns the number of descriptors checked and the mismatches found.
    """
    checked, mismatches = 0, []
    for desc in classical_descriptors(rank_max):
        checked += 1
        pairs = (
            ("m", fano_index(desc) - 3, table_m(desc)),
            ("dim", variety_dim(desc), classical_dimension(desc)),
        )
        for quantity, computed, expected in pairs:
            if computed != expected:
                mismatches.append(
                    TableMismatch(
                        dynkin=desc.dynkin,
                        rank=desc.rank,
                        node=desc.node,
                        quantity=quantity,
                        computed=computed,
                        expected=expected,
                    )
                )
    logger.info("[tables][rank_max:%s][checked:%s]", rank_max, checked)
    return checked, mismatches
