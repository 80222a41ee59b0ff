import pytest

from cicriteria.ci_classifier import (
    EXCEPTIONAL_SP_NOTE,
    HART_EXCEPTIONS,
    HART_RANGE_NOTE,
    Outcome,
    Region,
    VerdictKind,
    classify,
    evaluate,
    generators_ci,
    hauptlemma_split,
    homog_split_ci,
    verify_hart_thresholds,
)
from cicriteria.errors import DataUnavailableError, PreconditionError
from cicriteria.root_systems import VarietyDescriptor, invariants


def _desc(dynkin, rank, node):
    return VarietyDescriptor.of(dynkin, rank, node)


def _criteria(result):
    return [check.criterion for check in result.applied]


@pytest.mark.parametrize(
    "dynkin,rank,node,d,n,verdict",
    [
        ("A", 11, 1, 81, 10, "CompleteIntersection(hart-i)"),
        ("A", 7, 1, 10, 8, "CompleteIntersection(ran-i)"),
        ("A", 6, 1, 5, 2, "ExcludedNoSuchSubvariety(segre-positivity)"),
        ("A", 11, 1, 82, 10, "ExcludedNoSuchSubvariety(segre-positivity)"),
        ("A", 11, 1, 120, 25, "CompleteIntersection(ran-i)"),
        ("A", 11, 1, 200, 30, "Unknown"),
        ("D", 5, 1, 2, 2, "ExcludedNoSuchSubvariety(thmDgt-bound)"),
        ("D", 5, 1, 10, 6, "ExcludedNoSuchSubvariety(thmDgt-bound)"),
    ],
)
def test_classify_examples(dynkin, rank, node, d, n, verdict):
    assert str(classify(_desc(dynkin, rank, node), d, n).verdict) == verdict


def test_classify_records_the_full_audit_trail():
    result = classify(_desc("A", 7, 1), 10, 8)
    assert result.delta == -24
    assert _criteria(result) == ["hart-ii", "ran-i", "ran-ii"]
    hart, ran_i, ran_ii = result.applied
    assert hart.outcome == Outcome.NOT_SATISFIED
    assert ran_i.satisfied
    assert ran_i.inputs == {"m": 5, "d": 10, "n": 8}
    assert ran_ii.satisfied
    assert ran_ii.witness == 1
    assert HART_RANGE_NOTE in result.notes
    assert result.region == Region.GRID


def test_sharp_bound_is_cited_as_degree_bound():
    result = classify(_desc("D", 5, 1), 10, 6)
    assert _criteria(result) == ["thmDgt-bound", "segre-positivity", "thmDgt-sharp"]
    assert result.applied[-1].satisfied
    assert result.verdict.reason == "thmDgt-bound"
    assert result.region == Region.EMPTY_BELOW_EXCLUSION


def test_unsharp_bound_short_circuits():
    result = classify(_desc("D", 5, 1), 2, 2)
    assert _criteria(result) == ["thmDgt-bound"]
    assert result.applied[0].inputs["bound"] == "12/5"


@pytest.mark.parametrize(
    "d,n,region",
    [
        (120, 25, Region.HORIZONTAL),
        (20, 10, Region.VERTICAL),
        (200, 30, Region.UNKNOWN),
        (82, 10, Region.EMPTY_BELOW_EXCLUSION),
        (10**8, 19999, Region.CHECKER),
    ],
)
def test_regions_on_p11(d, n, region):
    assert classify(_desc("A", 11, 1), d, n).region == region


def test_comet_region_without_sp():
    result = classify(_desc("F4", None, 1), 10**6, 1999)
    assert result.region == Region.COMET
    assert result.verdict.kind == VerdictKind.UNKNOWN
    outcomes = {check.criterion: check.outcome for check in result.applied}
    assert outcomes["thmDgt-bound"] == Outcome.UNAVAILABLE
    assert outcomes["thmDgt-sharp"] == Outcome.UNAVAILABLE


def test_classify_requires_picard_isomorphism():
    with pytest.raises(PreconditionError):
        classify(_desc("A", 5, 1), 3, 3)


def test_classify_without_table_row():
    with pytest.raises(DataUnavailableError):
        classify(_desc("G", 2, 1), 3, 3)


def test_evaluate_skips_picard_check():
    desc = _desc("A", 5, 1)
    result = evaluate(invariants(desc), desc, 10, 8)
    assert result.verdict.kind == VerdictKind.COMPLETE_INTERSECTION


@pytest.mark.parametrize("ell", [11, 12, 13])
def test_hart_grid_on_projective_space(ell):
    desc = _desc("A", ell, 1)
    m = invariants(desc).m
    for d in range(1, m * m + 1):
        for n in range(1, 4 * m + 1):
            result = classify(desc, d, n)
            assert result.verdict.kind == VerdictKind.COMPLETE_INTERSECTION
            satisfied = {c.criterion for c in result.applied if c.satisfied}
            if result.delta <= 0:
                assert satisfied & {"ran-i", "ran-ii"}, (d, n)
            else:
                assert satisfied & {
                    "thmDgt-bound",
                    "segre-positivity",
                    "thmDgt-sharp",
                }, (d, n)


def test_hart_i_is_monotone_in_degree():
    desc = _desc("A", 11, 1)
    for d in range(1, 82):
        assert str(classify(desc, d, 10).verdict) == "CompleteIntersection(hart-i)"
    assert classify(desc, 82, 10).applied[0].outcome == Outcome.NOT_SATISFIED


@pytest.mark.parametrize("desc", sorted(HART_EXCEPTIONS, key=lambda d: d.family))
def test_hart_exceptions_fall_through(desc):
    result = classify(desc, 1, 2)
    hart = result.applied[0]
    assert hart.criterion == "hart-ii"
    assert hart.inputs["excepted"] is True
    assert not hart.satisfied
    assert result.verdict.criterion != "hart-ii"
    assert len(result.applied) > 1


def test_exceptional_group_hart_carries_sp_note():
    result = classify(_desc("E6", None, 1), 1, 1)
    assert EXCEPTIONAL_SP_NOTE in result.notes


@pytest.mark.parametrize(
    "dynkin,rank,delta_codim,expected",
    [
        ("E8", None, 3, True),
        ("A", 6, 2, True),
        ("A", 5, 2, False),
        ("E6", None, 3, False),
    ],
)
def test_homog_split_ci(dynkin, rank, delta_codim, expected):
    assert homog_split_ci(_desc(dynkin, rank, 1), delta_codim) is expected


def test_homog_split_ci_errors():
    with pytest.raises(DataUnavailableError):
        homog_split_ci(_desc("F4", None, 1), 2)
    with pytest.raises(PreconditionError):
        homog_split_ci(_desc("A", 6, 1), 1)


@pytest.mark.parametrize(
    "ell,delta_codim,a,expected",
    [(11, 3, 3, True), (7, 2, 2, True), (7, 3, 3, False), (6, 1, 1, False)],
)
def test_generators_ci(ell, delta_codim, a, expected):
    assert generators_ci(ell, delta_codim, a) is expected


def test_generators_ci_needs_enough_generators():
    with pytest.raises(PreconditionError):
        generators_ci(11, 3, 2)


@pytest.mark.parametrize(
    "kwargs,expected",
    [
        ({"ell": 11, "delta_codim": 2, "a": 4, "e": 2, "f": 2}, True),
        ({"ell": 6, "delta_codim": 2, "a": 4, "e": 2, "f": 2}, False),
        ({"ell": 14, "delta_codim": 2, "a": 4}, True),
        ({"ell": 12, "delta_codim": 3, "a": 4}, False),
    ],
)
def test_hauptlemma_split(kwargs, expected):
    assert hauptlemma_split(**kwargs) is expected


@pytest.mark.parametrize(
    "kwargs",
    [
        {"ell": 11, "delta_codim": 2, "a": 5, "e": 2, "f": 2},
        {"ell": 11, "delta_codim": 2, "a": 4, "e": 2},
        {"ell": 11, "delta_codim": 3, "a": 2},
    ],
)
def test_hauptlemma_split_errors(kwargs):
    with pytest.raises(PreconditionError):
        hauptlemma_split(**kwargs)


def test_verify_hart_thresholds():
    report = verify_hart_thresholds(12)
    assert report.passed
    skipped = [entry for entry in report.entries if entry.status == "skipped"]
    assert {(e.dynkin, e.rank, e.node) for e in skipped} >= {
        ("D", 6, 3),
        ("B", 6, 3),
        ("C", 6, 3),
        ("C", 6, 1),
    }
    passed = [entry for entry in report.entries if entry.status == "pass"]
    assert passed
    assert all(entry.threshold is not None for entry in passed)


def test_verify_hart_thresholds_precondition():
    with pytest.raises(PreconditionError):
        verify_hart_thresholds(5)
