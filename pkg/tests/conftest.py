"""Shared strategies and slow reference implementations used as oracles."""
from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from loopcosets.catalog import catalog
from loopcosets.loop import LoopTable, validate

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")

SMALL_CATALOG = ["C2", "C3", "V4", "C4", "C5", "S3", "C6", "C7", "D8", "Q8", "C2xC4", "C2xC2xC2", "example6"]


def random_latin_square(n: int, rng: random.Random) -> list[list[int]]:
    """Cell-by-cell fill with shuffled candidates and backtracking."""
    grid = [[-1] * n for _ in range(n)]
    cells = [(r, c) for r in range(n) for c in range(n)]
    choices: list[list[int]] = []
    i = 0
    while i < len(cells):
        r, c = cells[i]
        if len(choices) == i:
            used = set(grid[r][:c]) | {grid[k][c] for k in range(r)}
            opts = [v for v in range(n) if v not in used]
            rng.shuffle(opts)
            choices.append(opts)
        if choices[i]:
            grid[r][c] = choices[i].pop()
            i += 1
        else:
            choices.pop()
            grid[r][c] = -1
            i -= 1
            pr, pc = cells[i]
            grid[pr][pc] = -1
    return grid


def loop_from_square(square: list[list[int]]) -> LoopTable:
    """Permute columns so row 0 is the identity, then rows so column 0 is."""
    n = len(square)
    col_order = [square[0].index(v) for v in range(n)]
    rows = [[row[c] for c in col_order] for row in square]
    rows.sort(key=lambda row: row[0])
    return validate(rows)


def relabeled(q: LoopTable, perm: list[int]) -> LoopTable:
    """Isomorphic copy with ``x -> perm[x]``; ``perm[0]`` must be 0."""
    n = q.n
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[perm[x]][perm[y]] = perm[q.cayley[x][y]]
    return validate(out)


@st.composite
def random_loops(draw, min_order=1, max_order=8):
    n = draw(st.integers(min_order, max_order))
    seed = draw(st.integers(0, 2**32 - 1))
    return loop_from_square(random_latin_square(n, random.Random(seed)))


@st.composite
def catalog_copies(draw, names=SMALL_CATALOG):
    """A random relabeling of a small catalog loop (identity kept at 0)."""
    q = catalog(draw(st.sampled_from(names)))
    rest = draw(st.permutations(range(1, q.n)))
    return relabeled(q, [0, *rest])


def loops(max_order=8):
    return st.one_of(random_loops(1, max_order), catalog_copies())


# -- oracles -----------------------------------------------------------------


def naive_right_bol(q: LoopTable) -> bool:
    a = q.cayley
    r = range(q.n)
    return all(a[x][a[a[y][z]][y]] == a[a[a[x][y]][z]][y] for x in r for y in r for z in r)


def naive_moufang(q: LoopTable) -> bool:
    a = q.cayley
    r = range(q.n)
    return all(a[a[a[x][y]][x]][z] == a[x][a[y][a[x][z]]] for x in r for y in r for z in r)


def naive_orbits(q: LoopTable, elements) -> list[frozenset[int]]:
    """Orbits of the group generated by the permutations ``x -> xs``, via union-find."""
    parent = list(range(q.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in elements:
        for x in range(q.n):
            parent[find(x)] = find(q.cayley[x][s])
    groups: dict[int, set[int]] = {}
    for x in range(q.n):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def naive_designs_isomorphic(blocks1, blocks2, v: int) -> bool:
    """Try every point permutation; only for small ``v``."""
    target = sorted(sorted(b) for b in blocks2)
    for perm in itertools.permutations(range(v)):
        if sorted(sorted(perm[p] for p in b) for b in blocks1) == target:
            return True
    return False


def naive_subloops(q: LoopTable) -> set[frozenset[int]]:
    """Every subset containing 0 that is closed under the product (finite case)."""
    a = q.cayley
    out = set()
    others = range(1, q.n)
    for size in range(0, q.n):
        for comb in itertools.combinations(others, size):
            s = (0, *comb)
            ss = set(s)
            if all(a[x][y] in ss for x in s for y in s):
                out.add(frozenset(s))
    return out


@pytest.fixture
def fano():
    from loopcosets.catalog import fano_blocks
    from loopcosets.designs import IncidenceStructure

    return IncidenceStructure.from_blocks(fano_blocks(), range(7))
