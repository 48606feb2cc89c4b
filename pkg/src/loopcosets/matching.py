"""Augmenting-path bipartite matching with a deterministic vertex order."""
from __future__ import annotations

from typing import Sequence

from .errors import HallViolation


def perfect_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Match every left vertex ``i`` to a distinct right vertex in ``adj[i]``.

    Neighbours are tried in the order given.  When no perfect matching
    exists, :class:`HallViolation` names a set of left vertices with too few
    neighbours (the left side reachable from an unmatched vertex).
    """
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(u, seen):
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adj)):
        seen = [False] * n_right
        if not augment(u, seen):
            # alternating reachability from u gives the deficient set
            left = {u}
            right = set()
            stack = [u]
            while stack:
                x = stack.pop()
                for v in adj[x]:
                    if v not in right:
                        right.add(v)
                        w = match_right[v]
                        if w >= 0 and w not in left:
                            left.add(w)
                            stack.append(w)
            raise HallViolation(sorted(left), sorted(right))
    return match_left
