"""Finite loops stored as Cayley tables over the symbols ``0..n-1``.

The neutral element is always ``0``.  Tables from other sources are relabeled
before they get here (see :mod:`loopcosets.catalog`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IdentityViolation,
    LatinViolation,
    NotASubloop,
    NotPowerAssociative,
    ValidationError,
)

Permutation = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class LoopTable:
    cayley: tuple[tuple[int, ...], ...]
    name: str | None = None

    @property
    def n(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, LoopTable):
            return NotImplemented
        return self.cayley == other.cayley

    def __hash__(self):
        return hash(self.cayley)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LoopTable{label} of order {self.n}>"

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.cayley, dtype=np.int64).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    @cached_property
    def ldiv_array(self) -> np.ndarray:
        """``ldiv_array[x, y] = x \\ y``."""
        a = np.empty((self.n, self.n), dtype=np.int64)
        rows = np.arange(self.n)
        for x in range(self.n):
            a[x, self.array[x]] = rows
        a.flags.writeable = False
        return a

    @cached_property
    def rdiv_array(self) -> np.ndarray:
        """``rdiv_array[x, y] = x / y``."""
        a = np.empty((self.n, self.n), dtype=np.int64)
        cols = np.arange(self.n)
        for y in range(self.n):
            a[self.array[:, y], y] = cols
        a.flags.writeable = False
        return a

    def mul(self, x: int, y: int) -> int:
        return self.cayley[x][y]

    def left_div(self, x: int, y: int) -> int:
        return int(self.ldiv_array[x, y])

    def right_div(self, x: int, y: int) -> int:
        return int(self.rdiv_array[x, y])

    @cached_property
    def inverses(self) -> tuple[int, ...] | None:
        """Two-sided inverses, or ``None`` when some left and right inverse differ."""
        right = [int(v) for v in self.ldiv_array[:, 0]]
        left = [int(v) for v in self.rdiv_array[0, :]]
        return tuple(right) if right == left else None

    def is_associative(self) -> bool:
        return _associative(self.array)


def _associative(a: np.ndarray) -> bool:
    # (xy)z == x(yz) for all x, y, z
    left = a[a[:, :, None], np.arange(a.shape[0])[None, None, :]]
    right = a[np.arange(a.shape[0])[:, None, None], a[None, :, :]]
    return bool(np.array_equal(left, right))


def validate(raw: Sequence[Sequence[int]], name: str | None = None) -> LoopTable:
    """Check the loop axioms and wrap ``raw`` as a :class:`LoopTable`.

    The first offending cell is reported: rows are scanned before columns,
    and the identity row/column last.
    """
    rows = [list(r) for r in raw]
    n = len(rows)
    if n == 0:
        raise ValidationError("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ValidationError(f"cell ({i}, {j}) is not an integer")
            if not 0 <= v < n:
                raise ValidationError(f"cell ({i}, {j}) = {v} is outside 0..{n - 1}")
    for i, row in enumerate(rows):
        seen = set()
        for v in row:
            if v in seen:
                raise LatinViolation("row", i, int(v))
            seen.add(v)
    for j in range(n):
        seen = set()
        for i in range(n):
            v = rows[i][j]
            if v in seen:
                raise LatinViolation("column", j, int(v))
            seen.add(v)
    for k in range(n):
        if rows[0][k] != k:
            raise IdentityViolation((0, k))
        if rows[k][0] != k:
            raise IdentityViolation((k, 0))
    return LoopTable(tuple(tuple(int(v) for v in r) for r in rows), name)


def mul(q: LoopTable, x: int, y: int) -> int:
    return q.cayley[x][y]


def left_div(q: LoopTable, x: int, y: int) -> int:
    return q.left_div(x, y)


def right_div(q: LoopTable, x: int, y: int) -> int:
    return q.right_div(x, y)


def opposite(q: LoopTable) -> LoopTable:
    """The loop with ``x * y = y x``."""
    name = f"{q.name}^op" if q.name else None
    return LoopTable(tuple(zip(*q.cayley)), name)


def translation(q: LoopTable, x: int, side: str = "left") -> Permutation:
    """``L_x`` (``y -> xy``) or ``R_x`` (``y -> yx``) as a tuple."""
    if side == "left":
        return q.cayley[x]
    if side == "right":
        return tuple(q.cayley[y][x] for y in range(q.n))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# -- subloops ---------------------------------------------------------------


@dataclass(frozen=True)
class Subloop:
    parent: LoopTable = field(repr=False)
    elements: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.element_set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def table(self) -> LoopTable:
        """The subloop as a loop in its own right, elements renumbered in sorted order."""
        index = {x: i for i, x in enumerate(self.elements)}
        q = self.parent.cayley
        return LoopTable(
            tuple(tuple(index[q[x][y]] for y in self.elements) for x in self.elements)
        )


def is_closed(q: LoopTable, elements: Iterable[int]) -> bool:
    """Subloop criterion: nonempty, closed under product and both divisions."""
    els = set(elements)
    if not els:
        return False
    a, ld, rd = q.array, q.ldiv_array, q.rdiv_array
    idx = np.fromiter(sorted(els), dtype=np.int64)
    ix = np.ix_(idx, idx)
    return all(set(t[ix].ravel().tolist()) <= els for t in (a, ld, rd))


def subloop(q: LoopTable, elements: Iterable[int]) -> Subloop:
    """Wrap ``elements`` as a :class:`Subloop`, raising if it is not closed."""
    els = sorted(set(int(e) for e in elements))
    if not els or any(not 0 <= e < q.n for e in els) or not is_closed(q, els):
        raise NotASubloop(f"{els} is not a subloop of {q!r}")
    return Subloop(q, tuple(els))


def subloop_closure(q: LoopTable, generators: Iterable[int] = ()) -> Subloop:
    """Smallest subloop containing ``generators`` (and 0)."""
    els = {0} | {int(g) for g in generators}
    frontier = list(els)
    a, ld, rd = q.cayley, q.ldiv_array, q.rdiv_array
    while frontier:
        new = []
        current = list(els)
        for x in frontier:
            for y in current:
                for v in (a[x][y], a[y][x], ld[x, y], ld[y, x], rd[x, y], rd[y, x]):
                    v = int(v)
                    if v not in els:
                        els.add(v)
                        new.append(v)
                        current.append(v)
        frontier = new
    return Subloop(q, tuple(sorted(els)))


def all_subloops(q: LoopTable) -> list[Subloop]:
    """Every subloop of ``q``, sorted by (order, elements).

    Grows subloops one generator at a time, so every subloop is reached.
    """
    start = subloop_closure(q, ())
    found = {start.elements: start}
    stack = [start]
    while stack:
        s = stack.pop()
        for g in range(q.n):
            if g in s.element_set:
                continue
            t = subloop_closure(q, s.elements + (g,))
            if t.elements not in found:
                found[t.elements] = t
                stack.append(t)
    return sorted(found.values(), key=lambda s: (s.m, s.elements))


# -- element orders ---------------------------------------------------------


def element_order(q: LoopTable, x: int) -> int:
    """Least ``k >= 1`` with ``x^k = 0``; requires ``<x>`` to be a group."""
    cyc = subloop_closure(q, (x,))
    if not _associative(cyc.table().array):
        raise NotPowerAssociative(f"<{x}> is not associative in {q!r}")
    k, p = 1, x
    while p != 0:
        p = q.cayley[p][x]
        k += 1
    return k


def powers(q: LoopTable, x: int) -> list[int]:
    """``[x^0, x^1, ..., x^(k-1)]`` by repeated right multiplication."""
    out = [0]
    p = x
    while p != 0:
        out.append(p)
        p = q.cayley[p][x]
    return out


# -- inner mappings ---------------------------------------------------------


def inner_left_generators(q: LoopTable) -> list[Permutation]:
    """``L(x, y) = L_{xy}^{-1} L_x L_y`` for all ``x, y``, i.e. ``z -> (xy) \\ (x(yz))``."""
    a, ld = q.array, q.ldiv_array
    n = q.n
    z = np.arange(n)
    gens = []
    for x in range(n):
        for y in range(n):
            gens.append(tuple(int(v) for v in ld[a[x, y], a[x, a[y, z]]]))
    return gens


def is_automorphism(q: LoopTable, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=np.int64)
    a = q.array
    return bool(np.array_equal(p[a], a[p[:, None], p[None, :]]))


# -- isomorphism ------------------------------------------------------------


def _invariants(q: LoopTable) -> list[tuple]:
    a = q.array
    commuting = (a == a.T).sum(axis=1)
    out = []
    for x in range(q.n):
        out.append((subloop_closure(q, (x,)).m, int(commuting[x]), int(a[x, x]) == 0))
    return out


def _generating_sequence(q: LoopTable) -> list[int]:
    gens: list[int] = []
    span = subloop_closure(q, ())
    while span.m < q.n:
        g = next(x for x in range(q.n) if x not in span.element_set)
        gens.append(g)
        span = subloop_closure(q, gens)
    return gens


def is_isomorphic(q1: LoopTable, q2: LoopTable) -> dict[int, int] | None:
    """An isomorphism ``q1 -> q2`` as a dict, or ``None``.

    Backtracks over images of a generating sequence of ``q1`` and extends
    each partial assignment by closure, so the search tree is small.
    """
    if q1.n != q2.n:
        return None
    inv1, inv2 = _invariants(q1), _invariants(q2)
    if sorted(inv1) != sorted(inv2):
        return None
    gens = _generating_sequence(q1)
    a1, a2 = q1.cayley, q2.cayley

    def extend(phi: dict[int, int]) -> dict[int, int] | None:
        phi = dict(phi)
        used = {v: k for k, v in phi.items()}
        changed = True
        while changed:
            changed = False
            keys = list(phi)
            for x in keys:
                for y in keys:
                    xy = a1[x][y]
                    img = a2[phi[x]][phi[y]]
                    if xy in phi:
                        if phi[xy] != img:
                            return None
                    else:
                        if img in used or inv1[xy] != inv2[img]:
                            return None
                        phi[xy] = img
                        used[img] = xy
                        changed = True
            if not changed:
                # divisions close the image of a subloop too
                for x in keys:
                    for y in keys:
                        for src, dst in (
                            (q1.left_div(x, y), q2.left_div(phi[x], phi[y])),
                            (q1.right_div(x, y), q2.right_div(phi[x], phi[y])),
                        ):
                            if src in phi:
                                if phi[src] != dst:
                                    return None
                            else:
                                if dst in used or inv1[src] != inv2[dst]:
                                    return None
                                phi[src] = dst
                                used[dst] = src
                                changed = True
        return phi

    def search(i: int, phi: dict[int, int]) -> dict[int, int] | None:
        if i == len(gens):
            return phi if len(phi) == q1.n else None
        g = gens[i]
        if g in phi:
            return search(i + 1, phi)
        used = set(phi.values())
        for c in range(q2.n):
            if c in used or inv2[c] != inv1[g]:
                continue
            trial = dict(phi)
            trial[g] = c
            ext = extend(trial)
            if ext is not None:
                res = search(i + 1, ext)
                if res is not None:
                    return res
        return None

    start = extend({0: 0})
    if start is None:
        return None
    phi = search(0, start)
    if phi is None:
        return None
    # full check, cheap
    for x in range(q1.n):
        for y in range(q1.n):
            if phi[a1[x][y]] != a2[phi[x]][phi[y]]:
                return None
    return dict(sorted(phi.items()))
