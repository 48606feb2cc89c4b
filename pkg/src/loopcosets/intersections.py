"""Nonempty intersections of left cosets ``xS ∩ yS``.

In a right Bol loop ``xs -> ys`` permutes ``xS ∩ yS``; in a Moufang loop
the cycle through ``xs = yr`` has length ``|s r^-1|``.  In left automorphic
loops, ``x \\ (xS ∩ yS)`` is a subloop of ``S`` whenever ``x`` lies in the
intersection.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .errors import (
    EmptyMeet,
    NotLeftAutomorphic,
    NotLeftAutomorphicMoufang,
    NotMoufang,
    NotRightBol,
    RepresentativeNotInMeet,
    SubloopAssertionFailed,
)
from .loop import LoopTable, Subloop, all_subloops, element_order, is_closed, subloop
from .properties import is_left_automorphic, is_moufang, is_right_bol


def _sub(q, s) -> Subloop:
    return s if isinstance(s, Subloop) else subloop(q, s)


def meet(q: LoopTable, s, x: int, y: int) -> frozenset[int]:
    sub = _sub(q, s)
    a = q.cayley
    return frozenset(a[x][t] for t in sub.elements) & frozenset(a[y][t] for t in sub.elements)


def _fxy(q: LoopTable, sub: Subloop, x: int, y: int) -> dict[int, int]:
    a = q.cayley
    common = meet(q, sub, x, y)
    if not common:
        raise EmptyMeet(f"{x}S and {y}S are disjoint")
    f = {}
    for t in sub.elements:
        xs = a[x][t]
        if xs in common:
            f[xs] = a[y][t]
    if set(f.values()) != set(common) or len(f) != len(common):
        raise SubloopAssertionFailed(f"f_{{{x},{y}}} does not permute the meet in {q!r}")
    return f


def fxy(q: LoopTable, s, x: int, y: int, *, check: bool = True) -> dict[int, int]:
    """The permutation ``xs -> ys`` of ``xS ∩ yS``."""
    if check and not is_right_bol(q):
        raise NotRightBol(f"{q!r} is not right Bol")
    return _fxy(q, _sub(q, s), x, y)


def cycles(perm: dict[int, int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation given as a dict, each starting at its least point."""
    seen = set()
    out = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class IntersectionRecord:
    x: int
    y: int
    meet: frozenset[int]
    fxy: dict[int, int] | None = None
    cycle_type: tuple[int, ...] = ()
    shift_subloop: tuple[int, ...] | None = None


def intersection_record(q: LoopTable, s, x: int, y: int) -> IntersectionRecord:
    sub = _sub(q, s)
    common = meet(q, sub, x, y)
    f = None
    ctype: tuple[int, ...] = ()
    if common and is_right_bol(q):
        f = _fxy(q, sub, x, y)
        ctype = tuple(sorted(len(c) for c in cycles(f)))
    shift = None
    if x in common:
        ld = q.ldiv_array
        h = sorted(int(ld[x, z]) for z in common)
        if is_closed(q, h) and set(h) <= sub.element_set:
            shift = tuple(h)
    return IntersectionRecord(x, y, common, f, ctype, shift)


def overlapping_pairs(q: LoopTable, s) -> list[tuple[int, int]]:
    """Ordered pairs ``(x, y)`` with ``xS ∩ yS`` nonempty."""
    sub = _sub(q, s)
    a = q.cayley
    cos = [frozenset(a[x][t] for t in sub.elements) for x in range(q.n)]
    return [(x, y) for x, y in product(range(q.n), repeat=2) if cos[x] & cos[y]]


@dataclass
class PairReport:
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    details: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def cycle_length_check(q: LoopTable, s) -> PairReport:
    """Every cycle of ``f_{x,y}`` through ``xs = yr`` has length ``|s r^-1|``."""
    if not is_moufang(q):
        raise NotMoufang(f"{q!r} is not Moufang")
    sub = _sub(q, s)
    a = q.cayley
    ld = q.ldiv_array
    inv = q.inverses
    rep = PairReport()
    for x, y in overlapping_pairs(q, sub):
        f = _fxy(q, sub, x, y)
        length = {}
        for c in cycles(f):
            for z in c:
                length[z] = len(c)
        for z in f:
            t = int(ld[x, z])
            r = int(ld[y, z])
            want = element_order(q, a[t][inv[r]])
            rep.checked += 1
            if length[z] != want:
                rep.violations.append({"x": x, "y": y, "point": z, "cycle": length[z], "order": want})
    return rep


def sum_of_orders_check(q: LoopTable, s) -> PairReport:
    """Write each ``|xS ∩ yS|`` as a sum of orders of nonidentity elements of ``S``."""
    if not is_moufang(q):
        raise NotMoufang(f"{q!r} is not Moufang")
    sub = _sub(q, s)
    if sub.m == 1:
        raise ValueError("S must be nontrivial")
    a = q.cayley
    ld = q.ldiv_array
    inv = q.inverses
    # an element order dividing |S|, used when x and y give the same coset
    some_order = element_order(q, next(t for t in sub.elements if t != 0))
    rep = PairReport()
    for x, y in overlapping_pairs(q, sub):
        f = _fxy(q, sub, x, y)
        common = set(f)
        rep.checked += 1
        parts: list[int] = []
        for c in cycles(f):
            z = c[0]
            t, r = int(ld[x, z]), int(ld[y, z])
            parts.append(element_order(q, a[t][inv[r]]))
        if all(p == 1 for p in parts):
            parts = [some_order] * (len(common) // some_order)
        ok = all(p > 1 for p in parts) and sum(parts) == len(common)
        rec = {"x": x, "y": y, "size": len(common), "orders": sorted(parts)}
        rep.details.append(rec)
        if not ok or len(common) == 1:
            rep.violations.append(rec)
    return rep


def shift_subloop_test(q: LoopTable, s, x: int, y: int, *, check: bool = True) -> Subloop:
    """``x \\ (xS ∩ yS)`` as a subloop of ``S``; requires ``x`` in the meet."""
    if check and not is_left_automorphic(q):
        raise NotLeftAutomorphic(f"{q!r} is not left automorphic")
    sub = _sub(q, s)
    common = meet(q, sub, x, y)
    if x not in common:
        raise RepresentativeNotInMeet(f"{x} is not in {x}S ∩ {y}S")
    ld = q.ldiv_array
    h = sorted(int(ld[x, z]) for z in common)
    if not (set(h) <= sub.element_set and is_closed(q, h)):
        raise SubloopAssertionFailed(
            f"{x}\\({x}S ∩ {y}S) = {h} is not a subloop of S={list(sub.elements)} in {q!r}"
        )
    return subloop(q, h)


def moufang_shift_equality(q: LoopTable, s, x: int, y: int, *, check: bool = True) -> bool:
    """``x^-1 (xS ∩ yS) = y^-1 (xS ∩ yS)``."""
    if check and not is_moufang(q):
        raise NotMoufang(f"{q!r} is not Moufang")
    common = meet(q, s, x, y)
    a = q.cayley
    inv = q.inverses
    return {a[inv[x]][z] for z in common} == {a[inv[y]][z] for z in common}


def divisibility_theorem_check(q: LoopTable, s) -> PairReport:
    """``|xS ∩ yS|`` is the order of a subloop of ``S`` (so it divides ``|S|``)."""
    if not (is_moufang(q) and is_left_automorphic(q)):
        raise NotLeftAutomorphicMoufang(f"{q!r} is not a left automorphic Moufang loop")
    sub = _sub(q, s)
    orders = {t.m for t in all_subloops(sub.table())}
    rep = PairReport()
    sizes = Counter()
    for x, y in overlapping_pairs(q, sub):
        size = len(meet(q, sub, x, y))
        sizes[size] += 1
        rep.checked += 1
        if size not in orders or sub.m % size:
            rep.violations.append({"x": x, "y": y, "size": size})
    rep.details.append({"meet_sizes": dict(sorted(sizes.items())), "subloop_orders": sorted(orders)})
    return rep
