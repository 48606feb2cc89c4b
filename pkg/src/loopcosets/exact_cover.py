"""Exact cover by Knuth's Algorithm X on dict-of-sets.

Branching always picks the uncovered point with the fewest candidate
blocks (smallest point on ties) and tries blocks in key order, so results
are reproducible.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Iterator, Mapping


def iter_exact_covers(
    universe: Iterable[Hashable], blocks: Mapping[Hashable, Iterable[Hashable]]
) -> Iterator[list]:
    """Yield every selection of block keys partitioning ``universe``.

    Blocks containing points outside ``universe`` are ignored.
    """
    points = set(universe)
    sets = {}
    for key in sorted(blocks):
        b = frozenset(blocks[key])
        if b and b <= points:
            sets[key] = b
    cover: dict = {p: set() for p in points}
    for key, b in sets.items():
        for p in b:
            cover[p].add(key)

    def select(key):
        removed = []
        for p in sets[key]:
            for other in cover[p]:
                for q in sets[other]:
                    if q != p:
                        cover[q].discard(other)
            removed.append((p, cover.pop(p)))
        return removed

    def deselect(key, removed):
        for p, keys in reversed(removed):
            cover[p] = keys
            for other in keys:
                for q in sets[other]:
                    if q != p:
                        cover[q].add(other)

    chosen: list = []

    def solve():
        if not cover:
            yield list(chosen)
            return
        p = min(cover, key=lambda x: (len(cover[x]), x))
        for key in sorted(cover[p]):
            chosen.append(key)
            removed = select(key)
            yield from solve()
            deselect(key, removed)
            chosen.pop()

    yield from solve()


def exact_cover(universe, blocks) -> list | None:
    """First exact cover in search order, or ``None``."""
    return next(iter_exact_covers(universe, blocks), None)
