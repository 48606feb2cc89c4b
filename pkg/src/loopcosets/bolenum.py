"""Potential orbits of ``Mlt_rho(Q, S)`` over all right Bol loops ``Q >= S``.

A potential orbit is a latin rectangle whose columns are indexed by the
elements of ``S`` and whose rows are the points of the orbit; the entry in
row ``a`` and column ``i`` is ``a * s_i``.  Rows and symbols are ``0..l-1``,
the root is ``0`` and row ``0`` reads ``0..m-1``.

The search alternates two steps.  Propagation applies the right Bol rule:
whenever ``a s_i = b s_j`` is known, ``b s_i = a s_k`` with
``s_k = (s_i s_j^-1) s_i``.  Branching fills the first empty cell (row-major)
with every symbol allowed by the latin property, or with a new symbol that
opens a new row.  New symbols therefore appear in row-major order, which
makes every rectangle canonical for its root.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import NotRightBol
from .exact_cover import exact_cover
from .loop import LoopTable
from .properties import is_right_bol

Rectangle = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BolContext:
    """Lookup tables for a right Bol loop ``S`` (identity ``0``)."""

    S: LoopTable
    inv: tuple[int, ...]
    triple: tuple[tuple[int, ...], ...]  # triple[i][j] = (s_i s_j^-1) s_i
    solve_j: tuple[tuple[int, ...], ...]  # solve_j[i][k] = j with triple[i][j] = k

    @property
    def m(self) -> int:
        return self.S.n


def build_context(S: LoopTable) -> BolContext:
    if not is_right_bol(S):
        raise NotRightBol(f"{S!r} does not satisfy x((yz)y) = ((xy)z)y")
    inv = S.inverses
    a = S.cayley
    m = S.n
    triple = tuple(tuple(a[a[i][inv[j]]][i] for j in range(m)) for i in range(m))
    solve = []
    for i in range(m):
        row = [0] * m
        for j in range(m):
            row[triple[i][j]] = j
        solve.append(tuple(row))
    return BolContext(S, inv, triple, tuple(solve))


@dataclass
class EnumConfig:
    max_symbols: int | None = None  # default 64 * m
    max_rectangles: int = 10**6
    time_budget: float | None = None  # seconds

    def symbol_cap(self, m: int) -> int:
        cap = 64 * m if self.max_symbols is None else self.max_symbols
        if cap < m:
            raise ValueError(f"max_symbols must be at least |S| = {m}")
        return cap


@dataclass
class Enumeration:
    rectangles: list[Rectangle]
    truncated: bool = False
    reason: str | None = None
    nodes: int = 0
    elapsed: float = 0.0
    prefixes: list[tuple[int, ...]] = field(default_factory=list)


class Contradiction(Exception):
    """Backtrack signal raised by :meth:`PartialOrbit.propagate`."""


class PartialOrbit:
    """Mutable rectangle with an undo trail.

    Cells live in a flat list (``-1`` = empty); ``pos`` inverts each
    column and ``row_has`` records which symbols a row already holds.
    """

    def __init__(self, ctx: BolContext, cap: int):
        m = ctx.m
        self.ctx = ctx
        self.m = m
        self.cap = cap
        self.cell = [-1] * (cap * m)
        self.pos = [-1] * (m * cap)
        self.row_has = bytearray(cap * cap)
        self.nrows = 0
        self.trail: list[int] = []
        self.queue: list[int] = []

    @classmethod
    def initial(cls, ctx: BolContext, cap: int) -> "PartialOrbit":
        p = cls(ctx, cap)
        p.nrows = ctx.m
        for i in range(ctx.m):
            p.assign(0, i, i)
        for r in range(1, ctx.m):
            p.assign(r, 0, r)
        return p

    # -- primitive moves ----------------------------------------------------

    def assign(self, r: int, c: int, v: int) -> None:
        cap = self.cap
        if self.pos[c * cap + v] >= 0 or self.row_has[r * cap + v]:
            raise Contradiction
        k = r * self.m + c
        self.cell[k] = v
        self.pos[c * cap + v] = r
        self.row_has[r * cap + v] = 1
        self.trail.append(k)
        self.queue.append(k)

    def undo(self, trail_len: int, nrows: int) -> None:
        cell, pos, row_has, trail = self.cell, self.pos, self.row_has, self.trail
        m, cap = self.m, self.cap
        while len(trail) > trail_len:
            k = trail.pop()
            r, c = divmod(k, m)
            v = cell[k]
            cell[k] = -1
            pos[c * cap + v] = -1
            row_has[r * cap + v] = 0
        self.nrows = nrows
        self.queue.clear()

    def new_row(self) -> int:
        r = self.nrows
        self.nrows += 1
        self.assign(r, 0, r)
        return r

    # -- propagation --------------------------------------------------------

    def _equal(self, x: int, y: int) -> None:
        """Cells ``x`` and ``y`` (flat indices) must hold the same symbol."""
        cell = self.cell
        vx, vy = cell[x], cell[y]
        if vx >= 0:
            if vy >= 0:
                if vx != vy:
                    raise Contradiction
            else:
                r, c = divmod(y, self.m)
                self.assign(r, c, vx)
        elif vy >= 0:
            r, c = divmod(x, self.m)
            self.assign(r, c, vy)

    def propagate(self) -> None:
        """Fill forced entries until the queue is empty; raise on conflict.

        For a newly filled cell the rule is checked in all three roles it
        can play: one of the equal pair, the cell ``(b, s_i)``, or the cell
        ``(a, s_k)``.
        """
        m, cap = self.m, self.cap
        cell, pos, queue = self.cell, self.pos, self.queue
        triple, solve = self.ctx.triple, self.ctx.solve_j
        equal = self._equal
        while queue:
            k = queue.pop()
            r, c = divmod(k, m)
            v = cell[k]
            base = r * m
            tc = triple[c]
            for j in range(m):
                b = pos[j * cap + v]
                if b >= 0 and b != r:
                    equal(b * m + c, base + tc[j])
                    equal(base + j, b * m + triple[j][c])
            sc = solve
            for j in range(m):
                w = cell[base + j]
                if w < 0 or j == c:
                    continue
                # (r, c) as the cell (b, s_i): pair (a, c) = (r, j) = w
                a = pos[c * cap + w]
                if a >= 0:
                    equal(k, a * m + tc[j])
                # (r, c) as the cell (a, s_k) with i = j
                jj = sc[j][c]
                b = pos[jj * cap + w]
                if b >= 0:
                    equal(b * m + j, k)

    # -- views --------------------------------------------------------------

    def first_empty(self, start: int = 0) -> int:
        cell = self.cell
        end = self.nrows * self.m
        k = start
        while k < end and cell[k] >= 0:
            k += 1
        return k

    def rectangle(self) -> Rectangle:
        m = self.m
        cell = self.cell
        return tuple(tuple(cell[r * m:(r + 1) * m]) for r in range(self.nrows))

    def candidates(self, k: int) -> list[int]:
        """Existing symbols allowed at flat cell ``k``; a fresh symbol is tried after these."""
        r, c = divmod(k, self.m)
        cap = self.cap
        pos, row_has = self.pos, self.row_has
        col = c * cap
        row = r * cap
        return [v for v in range(self.nrows) if pos[col + v] < 0 and not row_has[row + v]]


def initial_rectangle(ctx: BolContext, cap: int | None = None) -> PartialOrbit:
    return PartialOrbit.initial(ctx, cap or 64 * ctx.m)


def enumerate_orbits(
    ctx: BolContext,
    cfg: EnumConfig | None = None,
    *,
    prefix: Sequence[int] = (),
    split_depth: int | None = None,
    on_rectangle: Callable[[Rectangle], None] | None = None,
) -> Enumeration:
    """Depth-first enumeration of all complete potential orbits.

    The search tree can be cut into independent pieces: with
    ``split_depth`` the search stops at that many branch points and
    records the choice sequences reaching them in ``prefixes`` (rectangles
    completed above the cut are still returned).  Passing one of those
    sequences as ``prefix`` searches only below it.  Candidate indices
    count the fresh symbol last.
    """
    cfg = cfg or EnumConfig()
    cap = cfg.symbol_cap(ctx.m)
    started = time.monotonic()
    out: list[Rectangle] = []
    res = Enumeration(out)
    p = PartialOrbit(ctx, cap)
    p.nrows = ctx.m
    try:
        for i in range(ctx.m):
            p.assign(0, i, i)
        for r in range(1, ctx.m):
            p.assign(r, 0, r)
        p.propagate()
    except Contradiction:
        return res

    # frame: [trail_len, nrows, cell, candidates, next_index, fresh_allowed]
    frames: list[list] = []
    start = 0
    descend = True
    depth = 0
    nodes = 0
    deadline = None if cfg.time_budget is None else started + cfg.time_budget
    while True:
        if descend:
            k = p.first_empty(start)
            if k == p.nrows * p.m:
                if len(frames) >= len(prefix):
                    rect = p.rectangle()
                    out.append(rect)
                    if on_rectangle is not None:
                        on_rectangle(rect)
                    if len(out) >= cfg.max_rectangles:
                        res.truncated, res.reason = True, "max_rectangles"
                        break
            elif split_depth is not None and len(frames) == split_depth:
                res.prefixes.append(tuple(f[4] - 1 for f in frames))
            else:
                cands = p.candidates(k)
                fresh = p.nrows < cap
                if not fresh:
                    res.truncated, res.reason = True, "max_symbols"
                frames.append([len(p.trail), p.nrows, k, cands, 0, fresh])
            descend = False
        if not frames:
            break
        f = frames[-1]
        p.undo(f[0], f[1])
        cands = f[3]
        n_choices = len(cands) + (1 if f[5] else 0)
        if len(frames) <= len(prefix):
            # replaying: only the prescribed branch
            want = prefix[len(frames) - 1]
            if f[4] > want or want >= n_choices:
                frames.pop()
                continue
            f[4] = want
        if f[4] >= n_choices:
            frames.pop()
            continue
        choice = f[4]
        f[4] += 1
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            res.truncated, res.reason = True, "time_budget"
            break
        r, c = divmod(f[2], p.m)
        try:
            if choice < len(cands):
                p.assign(r, c, cands[choice])
            else:
                v = p.nrows
                p.new_row()
                p.assign(r, c, v)
            p.propagate()
        except Contradiction:
            continue
        start = f[2] + 1
        descend = True
    res.nodes = nodes
    res.elapsed = time.monotonic() - started
    return res


# -- canonical labeling -------------------------------------------------------


def canonical_rectangle(action: Callable[[int, int], int], root, m: int) -> Rectangle:
    """Relabel the orbit of ``root`` the way the enumerator would.

    ``action(x, i)`` returns ``x * s_i``.  The root becomes ``0``, ``root * s_i``
    becomes ``i``, and further points are numbered in order of first
    appearance in a row-major scan of the rows taken in label order.
    """
    label = {}
    order = []
    for i in range(m):
        y = action(root, i)
        if y in label:
            raise ValueError("row of the root repeats a point")
        label[y] = i
        order.append(y)
    if label.get(root) != 0:
        raise ValueError("column 0 must act as the identity")
    rows = []
    r = 0
    while r < len(order):
        x = order[r]
        row = []
        for i in range(m):
            y = action(x, i)
            if y not in label:
                label[y] = len(order)
                order.append(y)
            row.append(label[y])
        rows.append(tuple(row))
        r += 1
    return tuple(rows)


def relabel_rectangle(rect: Rectangle, root: int = 0) -> Rectangle:
    """Canonical form of ``rect`` re-rooted at ``root``."""
    m = len(rect[0])
    return canonical_rectangle(lambda x, i: rect[x][i], root, m)


def is_canonical(rect: Rectangle) -> bool:
    return relabel_rectangle(rect, 0) == rect


def satisfies_bol_rule(ctx: BolContext, rect: Rectangle) -> bool:
    """Check a complete rectangle against every instance of the propagation rule."""
    m = ctx.m
    n = len(rect)
    col_inv = [[0] * n for _ in range(m)]
    for r, row in enumerate(rect):
        for c, v in enumerate(row):
            col_inv[c][v] = r
    for a in range(n):
        for i in range(m):
            v = rect[a][i]
            for j in range(m):
                b = col_inv[j][v]
                if rect[b][i] != rect[a][ctx.triple[i][j]]:
                    return False
    return True


# -- analysis ---------------------------------------------------------------


@dataclass(frozen=True)
class RectangleRecord:
    size: int
    divisible: bool
    witness: tuple[int, ...] | None  # row labels whose row sets partition the orbit

    @property
    def partition_found(self) -> bool:
        return self.witness is not None


def analyze(ctx: BolContext, rect: Rectangle) -> RectangleRecord:
    """Size, divisibility by ``|S|``, and a partition of the orbit into rows.

    Row ``j`` of the rectangle is the left coset ``jS``, so a partition of
    the orbit into left cosets is an exact cover by row sets.
    """
    size = len(rect)
    m = ctx.m
    divisible = size % m == 0
    witness = None
    if divisible:
        blocks: dict[int, frozenset[int]] = {}
        seen = set()
        for j, row in enumerate(rect):
            s = frozenset(row)
            if s not in seen:
                seen.add(s)
                blocks[j] = s
        sol = exact_cover(range(size), blocks)
        if sol is not None:
            witness = tuple(sorted(sol))
    return RectangleRecord(size, divisible, witness)


@dataclass
class OrbitSummary:
    lengths: Counter = field(default_factory=Counter)
    records: list[RectangleRecord] = field(default_factory=list)
    partial: bool = False

    @property
    def verdict(self) -> str:
        """``"yes"`` when every rectangle splits into cosets, else ``"?"``."""
        if self.partial or not self.records:
            return "?"
        return "yes" if all(r.partition_found for r in self.records) else "?"

    @property
    def divisible(self) -> bool:
        return all(r.divisible for r in self.records)

    def length_items(self) -> list[tuple[int, int]]:
        return sorted(self.lengths.items())

    def format_lengths(self) -> str:
        """Lengths as in ``8(2), 16, 32``."""
        return ", ".join(f"{k}({v})" if v > 1 else f"{k}" for k, v in self.length_items())


def summarize(records: Iterable[RectangleRecord], partial: bool = False) -> OrbitSummary:
    records = list(records)
    return OrbitSummary(Counter(r.size for r in records), records, partial)


def run(S: LoopTable, cfg: EnumConfig | None = None, workers: int = 1) -> tuple[Enumeration, OrbitSummary]:
    """Enumerate and summarize in one call."""
    ctx = build_context(S)
    if workers > 1:
        from .parallel import enumerate_parallel

        enum = enumerate_parallel(S, cfg, workers)
    else:
        enum = enumerate_orbits(ctx, cfg)
    summary = summarize((analyze(ctx, r) for r in enum.rectangles), enum.truncated)
    return enum, summary
