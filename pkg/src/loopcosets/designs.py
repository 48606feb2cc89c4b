"""Coset designs, their parameters, and the realization of symmetric designs as cosets.

A loop ``Q`` with subloop ``S`` (``|S| = m``) gives the incidence structure
with points ``Q \\ S`` and blocks ``xS`` for ``x`` outside ``S``.  Its Cayley
table splits into ``L1`` (the table of ``S``), ``L2`` (rows outside ``S``,
columns in ``S``; the rows of ``L2`` are the blocks) and ``L3`` (the other
columns).  Going backwards, a symmetric design becomes ``L2`` via disjoint
systems of distinct representatives, and ``L1`` plus ``L2`` are completed
to a loop column by column with perfect matchings.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Sequence

from .catalog import cyclic
from .errors import (
    BlockSizeMismatch,
    InfeasibleOrders,
    NonuniformBlocks,
    NotSymmetric,
    SubloopIsWhole,
)
from .loop import LoopTable, Subloop, subloop, validate
from .matching import perfect_matching


@dataclass(frozen=True)
class IncidenceStructure:
    points: tuple
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        pts = set(self.points)
        for b in self.blocks:
            if not b <= pts:
                raise ValueError(f"block {sorted(b)} is not a subset of the points")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[Hashable]], points: Iterable[Hashable] | None = None):
        bs = tuple(frozenset(b) for b in blocks)
        if points is None:
            points = set().union(*bs) if bs else set()
        return cls(tuple(sorted(points)), bs)

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def normalized(self) -> tuple["IncidenceStructure", dict]:
        """Copy over points ``0..v-1`` (sorted order) and the relabeling used."""
        index = {p: i for i, p in enumerate(self.points)}
        blocks = tuple(frozenset(index[p] for p in b) for b in self.blocks)
        return IncidenceStructure(tuple(range(self.v)), blocks), index

    def replication(self) -> dict:
        r = Counter({p: 0 for p in self.points})
        for b in self.blocks:
            r.update(b)
        return dict(r)


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    k: int | None
    r: int | None
    max_t: int
    lambdas: dict[int, int] = field(default_factory=dict)
    symmetric: bool = False
    simple: bool = False

    def describe(self) -> str:
        if self.max_t == 0:
            return f"incidence structure (v={self.v}, b={self.b})"
        return f"{self.max_t}-({self.v},{self.k},{self.lambdas[self.max_t]}) design"


@dataclass(frozen=True)
class LatinRectangle:
    rows: tuple[tuple[int, ...], ...]
    n_symbols: int

    def __post_init__(self):
        if not self.is_latin():
            raise ValueError("array repeats a symbol in a row or a column")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def is_latin(self) -> bool:
        width = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != width or len(set(row)) != width:
                return False
            if any(not 0 <= v < self.n_symbols for v in row):
                return False
        for col in zip(*self.rows):
            if len(set(col)) != len(col):
                return False
        return True

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.rows))


# -- extraction ---------------------------------------------------------------


def extract_design(q: LoopTable, s, side: str = "left") -> IncidenceStructure:
    """Points ``Q \\ S``, blocks ``xS`` (or ``Sx``) for ``x`` outside ``S``, with multiplicity."""
    sub = s if isinstance(s, Subloop) else subloop(q, s)
    if sub.m == q.n:
        raise SubloopIsWhole("the subloop is the whole loop; the design would be empty")
    a = q.cayley
    points = tuple(x for x in range(q.n) if x not in sub.element_set)
    if side == "left":
        blocks = tuple(frozenset(a[x][t] for t in sub.elements) for x in points)
    elif side == "right":
        blocks = tuple(frozenset(a[t][x] for t in sub.elements) for x in points)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return IncidenceStructure(points, blocks)


def design_params(d: IncidenceStructure) -> DesignParams:
    if not d.blocks:
        raise ValueError("no blocks")
    sizes = {len(b) for b in d.blocks}
    if len(sizes) != 1:
        raise NonuniformBlocks(f"block sizes {sorted(sizes)}")
    k = sizes.pop()
    reps = set(d.replication().values())
    r = reps.pop() if len(reps) == 1 else None
    lambdas: dict[int, int] = {}
    for t in range(1, k + 1):
        total = comb(d.v, t)
        if d.b * comb(k, t) < total:
            break
        counts = Counter()
        for b in d.blocks:
            counts.update(combinations(sorted(b), t))
        values = set(counts.values())
        if len(counts) != total or len(values) != 1:
            break
        lambdas[t] = values.pop()
    return DesignParams(
        v=d.v,
        b=d.b,
        k=k,
        r=r,
        max_t=max(lambdas, default=0),
        lambdas=lambdas,
        symmetric=d.b == d.v,
        simple=len(set(d.blocks)) == d.b,
    )


def pair_coverage(d: IncidenceStructure) -> dict[tuple, int]:
    """Number of blocks through each pair of points (all pairs listed)."""
    cov = {pair: 0 for pair in combinations(d.points, 2)}
    for b in d.blocks:
        for pair in combinations(sorted(b), 2):
            cov[pair] += 1
    return cov


def designs_isomorphic(d1: IncidenceStructure, d2: IncidenceStructure) -> dict | None:
    """A point bijection carrying the block multiset of ``d1`` onto that of ``d2``."""
    if d1.v != d2.v or d1.b != d2.b:
        return None
    if sorted(map(len, d1.blocks)) != sorted(map(len, d2.blocks)):
        return None
    rep1, rep2 = d1.replication(), d2.replication()
    if sorted(rep1.values()) != sorted(rep2.values()):
        return None
    cov1, cov2 = pair_coverage(d1), pair_coverage(d2)

    def c1(x, y):
        return cov1[(x, y) if x < y else (y, x)]

    def c2(x, y):
        return cov2[(x, y) if x < y else (y, x)]

    prof1 = {p: sorted(c1(p, q) for q in d1.points if q != p) for p in d1.points}
    prof2 = {p: sorted(c2(p, q) for q in d2.points if q != p) for p in d2.points}
    # most constrained points first
    order = sorted(d1.points, key=lambda p: (-rep1[p], p))
    target = Counter(d2.blocks)
    phi: dict = {}
    used: set = set()

    def search(i):
        if i == len(order):
            mapped = Counter(frozenset(phi[p] for p in b) for b in d1.blocks)
            return dict(phi) if mapped == target else None
        p = order[i]
        for c in d2.points:
            if c in used or rep2[c] != rep1[p] or prof2[c] != prof1[p]:
                continue
            if any(c1(p, q) != c2(c, phi[q]) for q in order[:i]):
                continue
            phi[p] = c
            used.add(c)
            res = search(i + 1)
            if res is not None:
                return res
            del phi[p]
            used.discard(c)
        return None

    res = search(0)
    return None if res is None else dict(sorted(res.items()))


# -- systems of distinct representatives ----------------------------------------


def _prepare(blocks, points=None):
    blocks = [frozenset(b) for b in blocks]
    pts = sorted(set().union(*blocks) if points is None else set(points))
    if len(blocks) != len(pts):
        raise ValueError(f"{len(blocks)} blocks but {len(pts)} points")
    sizes = {len(b) for b in blocks}
    if len(sizes) > 1:
        raise BlockSizeMismatch(f"block sizes {sorted(sizes)}")
    return blocks, pts, (sizes.pop() if sizes else 0)


def disjoint_sdrs(blocks: Sequence[Iterable], k: int | None = None, points=None) -> list[list]:
    """``k`` pairwise disjoint systems of distinct representatives.

    Each system is a list giving the chosen point of each block.  Found one
    at a time by perfect matching; the chosen points are then removed from
    their blocks.  Fails with :class:`HallViolation` exactly when some
    point does not lie in ``k`` blocks.
    """
    blocks, pts, size = _prepare(blocks, points)
    k = size if k is None else k
    if k != size:
        raise BlockSizeMismatch(f"blocks have size {size}, not {k}")
    index = {p: i for i, p in enumerate(pts)}
    remaining = [sorted(index[p] for p in b) for b in blocks]
    out = []
    for _ in range(k):
        match = perfect_matching(remaining, len(pts))
        out.append([pts[v] for v in match])
        for i, v in enumerate(match):
            remaining[i].remove(v)
    return out


def blocks_to_rectangle(blocks: Sequence[Iterable[int]], points=None) -> LatinRectangle:
    """Latin rectangle whose row ``i`` lists block ``i``; column ``j`` is the ``j``-th SDR.

    Symbols are positions of the points in sorted order.
    """
    blocks, pts, _ = _prepare(blocks, points)
    sdrs = disjoint_sdrs(blocks, points=pts)
    index = {p: i for i, p in enumerate(pts)}
    rows = tuple(tuple(index[sdr[i]] for sdr in sdrs) for i in range(len(blocks)))
    return LatinRectangle(rows, len(pts))


def complete_rectangle(rect: LatinRectangle | Sequence[Sequence[int]], n: int | None = None) -> LatinRectangle:
    """Extend an ``n x k`` latin rectangle on ``n`` symbols to a latin square.

    Each new column is a perfect matching of rows to symbols missing from
    the row, which always exists because the bipartite graph is regular.
    """
    if not isinstance(rect, LatinRectangle):
        rows = tuple(tuple(r) for r in rect)
        rect = LatinRectangle(rows, n if n is not None else len(rows))
    n = rect.n_symbols
    if len(rect.rows) != n:
        raise ValueError(f"need {n} rows, got {len(rect.rows)}")
    width = rect.shape[1]
    if width == 0:
        return LatinRectangle(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), n)
    rows = [list(r) for r in rect.rows]
    for _ in range(width, n):
        adj = [[v for v in range(n) if v not in set(row)] for row in rows]
        match = perfect_matching(adj, n)
        for row, v in zip(rows, match):
            row.append(v)
    return LatinRectangle(tuple(tuple(r) for r in rows), n)


def symbol_counts(rect: Sequence[Sequence[int]], n: int) -> list[int]:
    counts = [0] * n
    for row in rect:
        for v in row:
            counts[v] += 1
    return counts


def ryser_feasible(rect: Sequence[Sequence[int]], n: int) -> bool:
    """An ``r x s`` latin array on ``0..n-1`` embeds in a latin square of order ``n`` iff
    every symbol occurs at least ``r + s - n`` times."""
    r = len(rect)
    s = len(rect[0]) if r else 0
    if r > n or s > n:
        return False
    return all(c >= r + s - n for c in symbol_counts(rect, n))


def order_feasible(m: int, n: int) -> bool:
    """Some loop of order ``n`` has a subloop of order ``m``."""
    return 1 <= m <= n and (m == n or m <= n // 2)


def max_distinct_construction(n: int, m: int) -> LatinRectangle:
    """``(n-m) x m`` rectangle with row ``i`` equal to ``i, i+1, ..., i+m-1 (mod n-m)``."""
    if m < 1 or m > n - m:
        raise InfeasibleOrders(f"need 1 <= m <= n - m, got m={m}, n={n}")
    v = n - m
    return LatinRectangle(tuple(tuple((i + j) % v for j in range(m)) for i in range(v)), v)


# -- loops from rectangles -------------------------------------------------------


def _normalize(square: Sequence[Sequence[int]], m: int) -> tuple[list[list[int]], list[int]]:
    """Turn a latin square with identity column 0 into a loop table.

    Symbols are renamed so row 0 reads ``0..n-1`` and rows are moved to
    match; ``0..m-1`` stay fixed when row 0 already starts with them.
    Returns the table and the renaming ``sigma``.
    """
    n = len(square)
    sigma = [0] * n
    for c, v in enumerate(square[0]):
        sigma[v] = c
    table = [None] * n
    for r in range(n):
        table[sigma[r]] = [sigma[v] for v in square[r]]
    assert all(sigma[i] == i for i in range(m))
    return table, sigma


def embed_subloop(s_table: LoopTable, n: int) -> LoopTable:
    """A loop of order ``n`` whose restriction to ``0..m-1`` is ``s_table``."""
    m = s_table.n
    if not order_feasible(m, n):
        raise InfeasibleOrders(f"no loop of order {n} has a subloop of order {m}")
    if m == n:
        return s_table
    l2 = max_distinct_construction(n, m)
    rect = [list(r) for r in s_table.cayley] + [[m + v for v in row] for row in l2.rows]
    square = complete_rectangle(rect, n)
    table, _ = _normalize(square.rows, m)
    return validate(table, f"embed({s_table.name or m},{n})")


@dataclass(frozen=True)
class Realization:
    loop: LoopTable
    subloop: Subloop
    point_map: dict  # design point -> loop element

    def __iter__(self):
        return iter((self.loop, self.subloop))


def realize_design(d: IncidenceStructure, inner: LoopTable | None = None) -> Realization:
    """A loop ``Q`` and subloop ``S = {0..k-1}`` whose left-coset design is ``d``.

    ``inner`` becomes the table of ``S`` (cyclic group by default).  The
    returned ``point_map`` carries ``d`` onto ``extract_design(Q, S)``
    exactly, block multiset included.
    """
    if d.b != d.v:
        raise NotSymmetric(f"{d.b} blocks on {d.v} points")
    sizes = {len(b) for b in d.blocks}
    if len(sizes) != 1:
        raise BlockSizeMismatch(f"block sizes {sorted(sizes)}")
    k = sizes.pop()
    inner = inner if inner is not None else cyclic(k)
    if inner.n != k:
        raise BlockSizeMismatch(f"inner loop has order {inner.n}, blocks have size {k}")
    v = d.v
    n = v + k
    index = {p: i for i, p in enumerate(d.points)}
    l2 = blocks_to_rectangle([[index[p] for p in b] for b in d.blocks], points=range(v))
    rect: list[list[int] | None] = [list(r) for r in inner.cayley] + [None] * v
    for row in l2.rows:
        # the first column is the identity, so a row sits at its own label
        rect[k + row[0]] = [k + x for x in row]
    square = complete_rectangle(rect, n)
    table, sigma = _normalize(square.rows, k)
    q = validate(table, f"realize(v={v},k={k})")
    return Realization(q, subloop(q, range(k)), {p: sigma[k + i] for p, i in index.items()})


# -- translates -------------------------------------------------------------------


def translate_design_search(
    q: LoopTable, k: int, t: int, lam: int, limit: int | None = None
) -> list[tuple[int, ...]]:
    """``k``-subsets ``A`` whose left translates ``{xA}`` form a ``t-(n, k, lam)`` design.

    Subsets equal to the whole loop are excluded.  Results are sorted.
    """
    n = q.n
    if not 1 <= k < n or t < 1 or t > k:
        return []
    a = q.cayley
    need = comb(n, t)
    # counting obstruction: n * C(k, t) = lam * C(n, t)
    if n * comb(k, t) != lam * need:
        return []
    out = []
    for subset in combinations(range(n), k):
        counts = Counter()
        for x in range(n):
            blk = sorted(a[x][y] for y in subset)
            counts.update(combinations(blk, t))
        if len(counts) == need and set(counts.values()) == {lam}:
            out.append(subset)
            if limit is not None and len(out) >= limit:
                break
    return out
