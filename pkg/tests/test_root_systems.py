import numpy as np
import pytest

from cicriteria.errors import DataUnavailableError, InvalidDescriptorError
from cicriteria.root_systems import (
    VarietyDescriptor,
    cartan_matrix,
    classical_descriptors,
    classical_dimension,
    codim_bound,
    cross_check_tables,
    fano_index,
    invariants,
    positive_roots,
    table_m,
    variety_dim,
)


def test_positive_roots_small():
    assert positive_roots("A", 1) == [(1,)]
    assert positive_roots("A", 2) == [(1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize(
    "dynkin,rank,count",
    [
        ("A", 5, 15),
        ("B", 3, 9),
        ("C", 4, 16),
        ("D", 5, 20),
        ("E6", None, 36),
        ("E7", None, 63),
        ("E8", None, 120),
        ("F", 4, 24),
        ("G", 2, 6),
    ],
)
def test_positive_root_counts(dynkin, rank, count):
    assert len(positive_roots(dynkin, rank)) == count


def test_highest_root_of_g2():
    assert positive_roots("G2")[-1] == (3, 2)


def test_cartan_matrix_b2():
    assert np.array_equal(cartan_matrix("B", 2), np.array([[2, -1], [-2, 2]]))
    assert np.array_equal(cartan_matrix("C", 3).T, cartan_matrix("B", 3))


def test_cartan_matrix_is_a_copy():
    matrix = cartan_matrix("A", 3)
    matrix[0, 0] = 7
    assert cartan_matrix("A", 3)[0, 0] == 2


@pytest.mark.parametrize(
    "family,rank,node,dim",
    [
        ("A", 4, 1, 4),
        ("A", 6, 2, 10),
        ("D", 5, 5, 10),
        ("B", 3, 3, 6),
        ("E", 6, 1, 16),
        ("E", 7, 7, 27),
        ("E", 8, 8, 57),
    ],
)
def test_variety_dim(family, rank, node, dim):
    assert variety_dim(VarietyDescriptor(family=family, rank=rank, node=node)) == dim


@pytest.mark.parametrize(
    "family,rank,node,index",
    [
        ("A", 1, 1, 2),
        ("A", 7, 3, 8),
        ("B", 2, 1, 3),
        ("B", 2, 2, 4),
        ("B", 6, 6, 12),
        ("E", 6, 1, 12),
        ("E", 7, 7, 18),
    ],
)
def test_fano_index(family, rank, node, index):
    assert fano_index(VarietyDescriptor(family=family, rank=rank, node=node)) == index


def test_invariants_projective_space():
    inv = invariants(VarietyDescriptor.of("A", 11, 1))
    assert (inv.dim_v, inv.index, inv.m, inv.p_pos, inv.sp) == (11, 12, 9, 11, 11)
    assert inv.picard_iso
    assert inv.label == "P^11"


def test_invariants_symplectic_grassmannian():
    inv = invariants(VarietyDescriptor.of("C", 8, 3))
    assert (inv.m, inv.p_pos, inv.sp) == (11, 13, 5)
    assert inv.label == "SGr(3;16)"


@pytest.mark.parametrize("node", range(1, 9))
def test_invariants_e8(node):
    inv = invariants(VarietyDescriptor.of("E8", None, node))
    assert inv.p_pos == 29
    assert inv.sp == 4
    assert inv.sp_is_lower_bound
    assert inv.codim_bound == 3
    assert inv.notes


def test_invariants_f4_has_no_sp():
    inv = invariants(VarietyDescriptor.of("F4", None, 1))
    assert inv.sp is None
    assert inv.p_is_lower_bound


def test_invariants_g2_unavailable():
    with pytest.raises(DataUnavailableError, match="data unavailable"):
        invariants(VarietyDescriptor.of("G", 2, 1))


def test_invariants_c_node1_points_to_projective_space():
    with pytest.raises(DataUnavailableError, match=r"\(A, 15, 1\)"):
        invariants(VarietyDescriptor.of("C", 8, 1))


@pytest.mark.parametrize(
    "dynkin,rank,node",
    [
        ("H", 3, 1),
        ("A", 0, 1),
        ("A", 3, 4),
        ("A", 3, 0),
        ("B", 1, 1),
        ("E", 5, 1),
        ("E8", 7, 1),
        ("Ex", 8, 1),
    ],
)
def test_invalid_descriptors(dynkin, rank, node):
    with pytest.raises(InvalidDescriptorError):
        VarietyDescriptor.of(dynkin, rank, node)


def test_invalid_descriptor_is_value_error():
    with pytest.raises(ValueError):
        VarietyDescriptor(family="D", rank=3, node=1)


def test_descriptor_normalises_family():
    desc = VarietyDescriptor.of("e8", None, 2)
    assert desc == VarietyDescriptor(family="E", rank=8, node=2)
    assert desc.dynkin == "E8"
    assert desc.as_dict() == {"dynkin": "E8", "rank": 8, "node": 2}


@pytest.mark.parametrize(
    "family,rank,node,label",
    [
        ("A", 6, 2, "Gr(2;7)"),
        ("B", 5, 2, "OGr(2;11)"),
        ("D", 6, 5, "OGr-(6;12)"),
        ("D", 6, 6, "OGr+(6;12)"),
        ("E", 7, 1, "E7/P1"),
    ],
)
def test_labels(family, rank, node, label):
    assert VarietyDescriptor(family=family, rank=rank, node=node).label == label


def test_codim_bound():
    assert codim_bound(VarietyDescriptor.of("A", 6, 1)) == 2
    assert codim_bound(VarietyDescriptor.of("A", 5, 1)) == 0
    assert codim_bound(VarietyDescriptor.of("E7", None, 1)) == 2
    assert codim_bound(VarietyDescriptor.of("F4", None, 1)) is None


def test_closed_forms_outside_classical_types():
    desc = VarietyDescriptor.of("E6", None, 1)
    with pytest.raises(DataUnavailableError):
        classical_dimension(desc)
    with pytest.raises(DataUnavailableError):
        table_m(desc)


def test_classical_descriptors_cover_every_node():
    descs = list(classical_descriptors(4))
    assert len(descs) == (1 + 2 + 3 + 4) + (2 + 3 + 4) + (3 + 4) + 4
    assert descs[0] == VarietyDescriptor(family="A", rank=1, node=1)


def _accepted_descriptors():
    yield from classical_descriptors(20)
    for dynkin, rank in (("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4)):
        for node in range(1, rank + 1):
            yield VarietyDescriptor.of(dynkin, None, node)


def test_m_is_positive_whenever_picard_restricts():
    accepted = 0
    for desc in _accepted_descriptors():
        try:
            inv = invariants(desc)
        except DataUnavailableError:
            continue
        assert inv.m == inv.index - 3
        if inv.picard_iso:
            accepted += 1
            assert inv.m >= 1, desc.label
    assert accepted > 0


def test_cross_check_tables():
    checked, mismatches = cross_check_tables(20)
    assert mismatches == []
    assert checked == len(list(classical_descriptors(20)))
