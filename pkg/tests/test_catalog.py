import pytest

from loopcosets.catalog import (
    catalog,
    chein_double,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    fano_blocks,
    from_permutations,
    names,
    relabel,
    symmetric_group,
)
from loopcosets.errors import UnknownName
from loopcosets.loop import element_order, is_isomorphic
from loopcosets.properties import check_properties


def test_names_include_fixed_tables_and_families():
    listed = names()
    for name in ("intro10", "chein12", "example6", "S3", "Q8", "A4", "G12", "V4", "C<n>", "cyclic(n)"):
        assert name in listed


@pytest.mark.parametrize(
    "name, order",
    [("intro10", 10), ("chein12", 12), ("example6", 6), ("V4", 4), ("Q8", 8), ("S3", 6), ("A4", 12),
     ("G12", 12), ("C7", 7), ("D10", 10), ("Dic12", 12), ("C3xV4", 12), ("C2xC2xC2", 8), ("M(D8,2)", 16),
     ("cyclic(5)", 5), ("catalog:S4", 24)],
)
def test_orders(name, order):
    assert catalog(name).n == order


def test_unknown_name():
    with pytest.raises(UnknownName):
        catalog("nonsense")
    with pytest.raises(UnknownName):
        catalog("C3x")


def test_aliases_agree():
    assert catalog("M(S3,2)").cayley == catalog("chein12").cayley
    assert catalog("dicyclic12").cayley == catalog("G12").cayley
    assert catalog("C2xC2").cayley == catalog("V4").cayley


def test_chein12_is_the_double_of_s3():
    assert is_isomorphic(catalog("chein12"), chein_double(symmetric_group(3))) is not None


def test_group_structure():
    assert sorted(element_order(catalog("Q8"), x) for x in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(element_order(catalog("D8"), x) for x in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]
    g12 = dicyclic(12)
    assert sorted(element_order(g12, x) for x in range(12)).count(4) == 6
    assert is_isomorphic(g12, catalog("G12")) is not None
    assert is_isomorphic(dihedral(6), catalog("S3")) is not None
    assert is_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)) is not None


def test_s3_element_order():
    # identity, three reflections interleaved with the rotations
    q = catalog("S3")
    assert [element_order(q, x) for x in range(6)] == [1, 2, 2, 3, 3, 2]


def test_relabel_and_permutations():
    q = relabel("eab", ["eab", "abe", "bea"])
    assert q.cayley == cyclic(3).cayley
    perm = from_permutations([(0, 1, 2), (1, 2, 0), (2, 0, 1)])
    assert is_isomorphic(perm, cyclic(3)) is not None


def test_fano_blocks():
    blocks = fano_blocks()
    assert len(set(blocks)) == 7
    for i in range(7):
        for j in range(i + 1, 7):
            assert sum(1 for b in blocks if {i, j} <= b) == 1


@pytest.mark.parametrize("name", ["C2xC4", "D8", "Q8", "C3xC3", "D10", "C3xV4", "A4", "D12", "G12", "D14"])
def test_enumeration_subloops_are_groups(name):
    assert check_properties(catalog(name)).associative
