"""Orbits of the relative right multiplication group on a concrete loop."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .bolenum import Rectangle, canonical_rectangle
from .exact_cover import exact_cover
from .loop import LoopTable, Subloop, subloop
from .properties import has_right_inverse_property


@dataclass(frozen=True)
class OrbitPartition:
    loop: LoopTable
    subloop: Subloop
    orbits: tuple[frozenset[int], ...]  # sorted by least element

    def orbit_of(self, x: int) -> frozenset[int]:
        return next(o for o in self.orbits if x in o)

    def lengths(self) -> list[int]:
        return [len(o) for o in self.orbits]


def _sub(q, s) -> Subloop:
    return s if isinstance(s, Subloop) else subloop(q, s)


def _components(q: LoopTable, elements, both_ways: bool) -> list[frozenset[int]]:
    a = q.cayley
    n = q.n
    # predecessors under x -> xs, only needed without the right inverse property
    back: list[list[int]] = [[] for _ in range(n)]
    if both_ways:
        for x in range(n):
            for t in elements:
                back[a[x][t]].append(x)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            nbrs = [a[x][t] for t in elements]
            if both_ways:
                nbrs += back[x]
            for y in nbrs:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def forward_closure(q: LoopTable, s, x: int) -> frozenset[int]:
    """Points reachable from ``x`` by right multiplications with elements of ``S``."""
    sub = _sub(q, s)
    a = q.cayley
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for t in sub.elements:
            z = a[y][t]
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return frozenset(seen)


def relative_orbits(q: LoopTable, s, *, bidirectional: bool | None = None) -> OrbitPartition:
    """Orbits of ``<R_s : s in S>`` on ``Q``.

    Forward search suffices when ``R_s^-1 = R_(s^-1)``; otherwise edges are
    followed both ways.
    """
    sub = _sub(q, s)
    if bidirectional is None:
        bidirectional = not has_right_inverse_property(q)
    if bidirectional:
        comps = _components(q, sub.elements, True)
    else:
        comps, seen = [], set()
        for x in range(q.n):
            if x not in seen:
                c = forward_closure(q, sub, x)
                seen |= c
                comps.append(c)
    comps.sort(key=min)
    return OrbitPartition(q, sub, tuple(comps))


@dataclass(frozen=True)
class OrbitRecord:
    orbit: frozenset[int]
    size: int
    remainder: int  # size mod |S|
    cover: tuple[int, ...] | None  # representatives of disjoint left cosets covering the orbit


def lagrange_report(q: LoopTable, s) -> list[OrbitRecord]:
    """Divisibility by ``|S|`` and a left-coset cover for every orbit."""
    part = relative_orbits(q, s)
    sub = part.subloop
    a = q.cayley
    out = []
    for orb in part.orbits:
        blocks = {}
        seen = set()
        for x in sorted(orb):
            c = frozenset(a[x][t] for t in sub.elements)
            if c not in seen:
                seen.add(c)
                blocks[x] = c
        sol = exact_cover(orb, blocks)
        out.append(OrbitRecord(orb, len(orb), len(orb) % sub.m, None if sol is None else tuple(sorted(sol))))
    return out


def orbit_lengths_in_enumerated(q: LoopTable, s, enumerated: Iterable[int] | Mapping[int, int]) -> bool:
    """Every actual orbit length occurs among the enumerated potential lengths."""
    lengths = set(enumerated.keys() if isinstance(enumerated, Mapping) else enumerated)
    return all(len(o) in lengths for o in relative_orbits(q, s).orbits)


def action_rectangle(q: LoopTable, s, root: int) -> Rectangle:
    """Canonically labeled table of ``R_s`` on the orbit of ``root``.

    Columns follow the sorted elements of ``S``, so column ``i`` is the
    ``i``-th element of the subloop table.
    """
    sub = _sub(q, s)
    els = sub.elements
    a = q.cayley
    return canonical_rectangle(lambda x, i: a[x][els[i]], root, sub.m)


def orbit_length_counts(q: LoopTable, s) -> Counter:
    return Counter(relative_orbits(q, s).lengths())
