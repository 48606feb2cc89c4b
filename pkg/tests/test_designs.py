import random
from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from loopcosets.catalog import catalog, cyclic, fano_blocks
from loopcosets.designs import (
    IncidenceStructure,
    blocks_to_rectangle,
    complete_rectangle,
    design_params,
    designs_isomorphic,
    disjoint_sdrs,
    embed_subloop,
    extract_design,
    max_distinct_construction,
    order_feasible,
    pair_coverage,
    realize_design,
    ryser_feasible,
    translate_design_search,
)
from loopcosets.errors import (
    BlockSizeMismatch,
    HallViolation,
    InfeasibleOrders,
    NonuniformBlocks,
    NotSymmetric,
    SubloopIsWhole,
)
from loopcosets.loop import all_subloops, subloop

from conftest import naive_designs_isomorphic, random_latin_square


def fano():
    return IncidenceStructure.from_blocks(fano_blocks(), range(7))


def test_intro10_designs_are_fano():
    q = catalog("intro10")
    for side in ("left", "right"):
        d = extract_design(q, [0, 1, 2], side)
        p = design_params(d)
        assert (p.v, p.b, p.k, p.r, p.max_t, p.lambdas[2]) == (7, 7, 3, 3, 2, 1)
        assert p.symmetric and p.simple
        assert designs_isomorphic(d, fano()) is not None
        assert naive_designs_isomorphic(d.normalized()[0].blocks, fano_blocks(), 7)


def test_c6_repeated_blocks():
    d = extract_design(cyclic(6), [0, 3])
    p = design_params(d)
    assert (p.v, p.k, p.r, p.max_t) == (4, 2, 2, 1)
    assert not p.simple
    assert sorted(Counter(d.blocks).values()) == [2, 2]


def test_single_block():
    p = design_params(IncidenceStructure.from_blocks([[0, 1, 2]]))
    assert p.max_t == 3 and p.lambdas[3] == 1


def test_params_errors():
    with pytest.raises(NonuniformBlocks):
        design_params(IncidenceStructure.from_blocks([[0, 1], [2]]))
    with pytest.raises(SubloopIsWhole):
        extract_design(cyclic(3), [0, 1, 2])


def test_isomorphism_rejects_different_designs():
    d = extract_design(cyclic(6), [0, 3])
    other = IncidenceStructure.from_blocks([[0, 1], [1, 2], [2, 3], [3, 0]])
    assert designs_isomorphic(d, other) is None
    assert designs_isomorphic(d, d) is not None


def test_sdrs_of_fano():
    sdrs = disjoint_sdrs(fano_blocks())
    assert len(sdrs) == 3
    for i, b in enumerate(fano_blocks()):
        assert {sdr[i] for sdr in sdrs} == b


def test_singleton_blocks():
    blocks = [[i] for i in range(5)]
    assert disjoint_sdrs(blocks) == [[0, 1, 2, 3, 4]]
    assert blocks_to_rectangle(blocks).rows == tuple((i,) for i in range(5))


def test_hall_violation():
    # point 0 lies in three blocks and point 3 in one
    with pytest.raises(HallViolation):
        disjoint_sdrs([[0, 1], [0, 2], [0, 3], [1, 2]])


def test_complete_rectangle_edge_cases():
    sq = complete_rectangle([[] for _ in range(4)], 4)
    assert sq.rows[1] == (1, 2, 3, 0)
    full = tuple(cyclic(5).cayley)
    assert complete_rectangle(full).rows == full


def test_feasibility():
    assert order_feasible(3, 10) and not order_feasible(3, 5)
    assert order_feasible(5, 5)
    assert ryser_feasible(cyclic(5).cayley, 5)
    # C4 inside an order 6 square: symbols 4 and 5 are missing but need 2 copies
    assert not ryser_feasible(cyclic(4).cayley, 6)
    assert ryser_feasible(cyclic(4).cayley, 8)


def test_max_distinct_construction():
    r = max_distinct_construction(10, 3)
    assert r.shape == (7, 3)
    assert len({frozenset(row) for row in r.rows}) == 7
    r = max_distinct_construction(12, 3)
    v = 9
    for i in range(v):
        j = (i + 2) % v
        assert set(r.rows[i]) & set(r.rows[j]) == {(i + 2) % v}
    # rows (0,1) and (1,0) coincide as sets
    assert len({frozenset(row) for row in max_distinct_construction(4, 2).rows}) == 1
    with pytest.raises(InfeasibleOrders):
        max_distinct_construction(5, 3)


def test_embed_subloop():
    q = embed_subloop(cyclic(3), 10)
    assert q.n == 10
    assert subloop(q, range(3)).table().cayley == cyclic(3).cayley
    assert embed_subloop(cyclic(4), 4).cayley == cyclic(4).cayley
    with pytest.raises(InfeasibleOrders):
        embed_subloop(catalog("V4"), 7)


def test_realize_fano():
    q, s = realize_design(fano(), cyclic(3))
    assert q.n == 10 and s.elements == (0, 1, 2)
    assert designs_isomorphic(extract_design(q, s), fano()) is not None


def test_realize_chein12_design_with_v4():
    d = extract_design(catalog("chein12"), [0, 1, 6, 7])
    real = realize_design(d, catalog("V4"))
    assert real.loop.n == 12
    assert real.subloop.table().cayley == catalog("V4").cayley
    back = extract_design(real.loop, real.subloop)
    mapped = Counter(frozenset(real.point_map[p] for p in b) for b in d.blocks)
    assert mapped == Counter(back.blocks)


def test_realize_group_design_with_repeats():
    d = extract_design(cyclic(6), [0, 3])
    real = realize_design(d)
    assert designs_isomorphic(extract_design(*real), d) is not None


def test_realize_errors():
    with pytest.raises(NotSymmetric):
        realize_design(IncidenceStructure.from_blocks([[0, 1]], range(3)))
    with pytest.raises(BlockSizeMismatch):
        realize_design(IncidenceStructure.from_blocks([[0], [1, 2], [0, 2]]))
    with pytest.raises(BlockSizeMismatch):
        realize_design(fano(), cyclic(4))


def test_translate_search():
    found = translate_design_search(cyclic(7), 3, 2, 1)
    assert (0, 1, 3) in found
    assert len(found) == 14
    assert translate_design_search(cyclic(6), 2, 2, 1) == []
    assert translate_design_search(cyclic(5), 5, 1, 5) == []


@pytest.mark.parametrize("name", ["chein12", "intro10", "S3", "D8", "A4", "C3xV4", "example6"])
def test_extracted_designs_are_symmetric_1_designs(name):
    q = catalog(name)
    for s in all_subloops(q):
        if s.m == q.n:
            continue
        p = design_params(extract_design(q, s))
        assert p.v == p.b == q.n - s.m
        assert p.k == p.r == s.m


# -- properties ----------------------------------------------------------------


@st.composite
def latin_rectangles(draw, max_n=9):
    """First ``k`` columns of a random latin square of order ``n``."""
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**32 - 1))
    square = random_latin_square(n, random.Random(seed))
    return n, [row[:k] for row in square]


@st.composite
def regular_block_families(draw, max_n=10):
    n, rect = draw(latin_rectangles(max_n))
    if not rect[0]:
        rect = [[i] for i in range(n)]
    return [frozenset(row) for row in rect]


@settings(max_examples=200)
@given(regular_block_families())
def test_sdrs_are_disjoint_and_cover_blocks(blocks):
    k = len(blocks[0])
    sdrs = disjoint_sdrs(blocks)
    assert len(sdrs) == k
    for sdr in sdrs:
        assert len(set(sdr)) == len(blocks)
        assert all(p in b for p, b in zip(sdr, blocks))
    for i, b in enumerate(blocks):
        assert {sdr[i] for sdr in sdrs} == b
    rect = blocks_to_rectangle(blocks)
    assert [frozenset(row) for row in rect.rows] == list(blocks)


@settings(max_examples=200)
@given(latin_rectangles())
def test_completion_is_latin_and_extends(nr):
    n, rect = nr
    sq = complete_rectangle(rect, n)
    k = len(rect[0])
    assert len(sq.rows) == n and all(len(r) == n for r in sq.rows)
    for row in sq.rows:
        assert sorted(row) == list(range(n))
    for col in zip(*sq.rows):
        assert sorted(col) == list(range(n))
    assert [list(r[:k]) for r in sq.rows] == [list(r) for r in rect]


@settings(max_examples=300)
@given(regular_block_families(max_n=8), st.data())
def test_realization_round_trip(blocks, data):
    d = IncidenceStructure.from_blocks(blocks, range(len(blocks)))
    real = realize_design(d)
    back = extract_design(real.loop, real.subloop)
    mapped = Counter(frozenset(real.point_map[p] for p in b) for b in d.blocks)
    assert mapped == Counter(back.blocks)
    assert designs_isomorphic(d, back) is not None


@given(st.integers(1, 7), st.integers(1, 14))
def test_embed_subloop_matches_feasibility(m, n):
    s = cyclic(m)
    if order_feasible(m, n):
        q = embed_subloop(s, n)
        assert q.n == n
        assert subloop(q, range(m)).table().cayley == s.cayley
    else:
        with pytest.raises(InfeasibleOrders):
            embed_subloop(s, n)


@given(latin_rectangles(max_n=7))
def test_design_params_match_counting(nr):
    n, rect = nr
    if not rect[0]:
        return
    d = IncidenceStructure.from_blocks([frozenset(r) for r in rect], range(n))
    p = design_params(d)

    def uniform(t):
        counts = Counter(c for b in d.blocks for c in combinations(sorted(b), t))
        return len(counts) == len(list(combinations(range(n), t))) and len(set(counts.values())) == 1

    expected = 0
    while expected < p.k and uniform(expected + 1):
        expected += 1
    assert p.max_t == expected
    if p.max_t >= 2:
        assert set(pair_coverage(d).values()) == {p.lambdas[2]}
