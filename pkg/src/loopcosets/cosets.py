"""Left and right cosets, their intersection semilattices, and partitions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import NotAAIP, NotASubloop, NotMeetDense
from .exact_cover import exact_cover
from .loop import LoopTable, Subloop, subloop
from .properties import has_aaip

Block = frozenset[int]


def set_key(s: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key: size first, then lexicographic."""
    t = tuple(sorted(s))
    return len(t), t


def _as_subloop(q: LoopTable, s) -> Subloop:
    if isinstance(s, Subloop):
        if s.parent != q:
            raise NotASubloop("subloop belongs to a different loop")
        return s
    return subloop(q, s)


def _check_side(side: str) -> None:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def coset(q: LoopTable, s: Iterable[int], x: int, side: str = "left") -> Block:
    a = q.cayley
    if side == "left":
        return frozenset(a[x][t] for t in s)
    _check_side(side)
    return frozenset(a[t][x] for t in s)


@dataclass(frozen=True)
class CosetFamily:
    """One coset per element of ``Q``, so equal cosets appear repeatedly."""

    loop: LoopTable
    subloop: Subloop
    side: str
    cosets: tuple[tuple[int, Block], ...]

    @cached_property
    def distinct(self) -> tuple[Block, ...]:
        """Distinct cosets in order of their least representative."""
        out, seen = [], set()
        for _, c in self.cosets:
            if c not in seen:
                seen.add(c)
                out.append(c)
        return tuple(out)

    def representatives(self, block: Block) -> list[int]:
        return [x for x, c in self.cosets if c == block]


def coset_family(q: LoopTable, s, side: str = "left") -> CosetFamily:
    _check_side(side)
    sub = _as_subloop(q, s)
    return CosetFamily(q, sub, side, tuple((x, coset(q, sub.elements, x, side)) for x in range(q.n)))


@dataclass(frozen=True)
class MeetSemilattice:
    elements: frozenset[Block]
    maximal: tuple[Block, ...]

    def sorted_elements(self) -> list[Block]:
        return sorted(self.elements, key=set_key)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def check_meet_dense(self) -> None:
        top = self.maximal
        for p in self.elements:
            above = [mx for mx in top if p <= mx]
            if not above or frozenset.intersection(*above) != p:
                raise NotMeetDense(f"{sorted(p)} is not a meet of maximal elements")


def intersection_closure(family: CosetFamily | Iterable[Iterable[int]]) -> MeetSemilattice:
    """Smallest intersection-closed family containing the (distinct) cosets."""
    gens = family.distinct if isinstance(family, CosetFamily) else tuple(
        dict.fromkeys(frozenset(b) for b in family)
    )
    elements = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                x = e & g
                if x not in elements:
                    elements.add(x)
                    new.append(x)
        frontier = new
    maximal = tuple(sorted((e for e in elements if not any(e < f for f in elements)), key=set_key))
    return MeetSemilattice(frozenset(elements), maximal)


def semilattice(q: LoopTable, s, side: str = "left") -> MeetSemilattice:
    """``I_l(Q, S)`` or ``I_r(Q, S)``."""
    return intersection_closure(coset_family(q, s, side))


# -- decompositions and partitions ------------------------------------------


def decomposition_holds(q: LoopTable, s, side: str = "left") -> bool:
    """Any two cosets are disjoint or equal (pairwise comparison)."""
    fam = coset_family(q, s, side)
    cs = fam.distinct
    return all(not (a & b) for a, b in combinations(cs, 2))


def decomposition_criterion(q: LoopTable, s, side: str = "left") -> bool:
    """``(xs)S = xS`` for all ``x, s`` (dually ``S(sx) = Sx``)."""
    _check_side(side)
    sub = _as_subloop(q, s)
    a = q.cayley
    for x in range(q.n):
        base = coset(q, sub.elements, x, side)
        for t in sub.elements:
            y = a[x][t] if side == "left" else a[t][x]
            if coset(q, sub.elements, y, side) != base:
                return False
    return True


def find_partition(q: LoopTable, s, side: str = "left") -> list[int] | None:
    """Representatives of distinct cosets partitioning ``Q``, always including ``S`` (rep ``0``).

    ``None`` means no selection of cosets partitions ``Q``.
    """
    fam = coset_family(q, s, side)
    sub = fam.subloop
    rest = [x for x in range(q.n) if x not in sub.element_set]
    blocks = {}
    for x, c in fam.cosets:
        if x not in sub.element_set and c not in blocks.values():
            blocks[x] = c
    sol = exact_cover(rest, blocks)
    if sol is None:
        return None
    return [0] + sorted(sol)


# -- semilattice isomorphism --------------------------------------------------


def _meet(sets: Iterable[Block]) -> Block:
    it = iter(sets)
    out = next(it)
    for x in it:
        out = out & x
    return out


def extension_map(
    p: MeetSemilattice, p2: MeetSemilattice, f: Mapping[Block, Block]
) -> dict[Block, Block] | None:
    """Extend ``f`` on maximal elements to an isomorphism ``p -> p2``, if possible.

    Every ``x`` must go to the meet of ``f(m)`` over maximal ``m >= x``; the
    extension exists iff that map is a bijection onto ``p2`` preserving meets.
    """
    p.check_meet_dense()
    p2.check_meet_dense()
    if set(f) != set(p.maximal) or set(f.values()) != set(p2.maximal) or len(set(f.values())) != len(f):
        raise ValueError("f must be a bijection between the maximal elements")
    if len(p) != len(p2):
        return None
    F = {}
    for x in p.elements:
        F[x] = _meet(f[mx] for mx in p.maximal if x <= mx)
    if set(F.values()) != set(p2.elements):
        return None
    els = list(p.elements)
    for a, b in combinations(els, 2):
        if F[a & b] != F[a] & F[b]:
            return None
    return F


def semilattice_extension_test(p: MeetSemilattice, p2: MeetSemilattice, f: Mapping[Block, Block]) -> bool:
    return extension_map(p, p2, f) is not None


def extension_test_bruteforce(p: MeetSemilattice, p2: MeetSemilattice, f: Mapping[Block, Block]) -> bool:
    """The subset condition: ``meet(J) = meet(K)`` iff ``meet(f J) = meet(f K)`` for all nonempty ``J, K``.

    Exponential in the number of maximal elements; used as a test oracle.
    """
    top = list(p.maximal)
    idx = range(len(top))
    left: dict[Block, int] = {}
    right: dict[Block, int] = {}
    labels_left = []
    labels_right = []
    for size in range(1, len(top) + 1):
        for J in combinations(idx, size):
            a = _meet(top[j] for j in J)
            b = _meet(f[top[j]] for j in J)
            labels_left.append(left.setdefault(a, len(left)))
            labels_right.append(right.setdefault(b, len(right)))
    # the two partitions of subsets must coincide
    pairs = set(zip(labels_left, labels_right))
    return len(pairs) == len(left) == len(right)


def _pair_signature(p: MeetSemilattice) -> dict[tuple[int, int], int]:
    top = p.maximal
    out = {}
    for i, a in enumerate(top):
        for j, b in enumerate(top):
            x = a & b
            out[i, j] = sum(1 for mx in top if x <= mx)
    return out


def semilattices_isomorphic(p: MeetSemilattice, p2: MeetSemilattice) -> dict[Block, Block] | None:
    """An isomorphism ``p -> p2`` or ``None``.

    Backtracks over bijections of maximal elements, pruning with the number
    of maximal elements above each pairwise meet, and tests each complete
    bijection with :func:`extension_map`.
    """
    if len(p) != len(p2) or len(p.maximal) != len(p2.maximal):
        return None
    if sorted(len(x) for x in p.elements) != sorted(len(x) for x in p2.elements):
        return None
    sig1, sig2 = _pair_signature(p), _pair_signature(p2)
    k = len(p.maximal)
    row1 = [sorted(sig1[i, j] for j in range(k)) for i in range(k)]
    row2 = [sorted(sig2[i, j] for j in range(k)) for i in range(k)]
    image: list[int] = []
    used = [False] * k

    def search(i):
        if i == k:
            f = {p.maximal[a]: p2.maximal[image[a]] for a in range(k)}
            return extension_map(p, p2, f)
        for c in range(k):
            if used[c] or row1[i] != row2[c]:
                continue
            if any(sig1[a, i] != sig2[image[a], c] for a in range(i)):
                continue
            used[c] = True
            image.append(c)
            res = search(i + 1)
            if res is not None:
                return res
            image.pop()
            used[c] = False
        return None

    return search(0)


@dataclass(frozen=True)
class AAIPCheck:
    ok: bool
    mapping: dict[Block, Block]  # xS -> S x^-1 on distinct left cosets
    well_defined: bool


def aaip_map_check(q: LoopTable, s) -> AAIPCheck:
    """Check that ``xS -> Sx^-1`` is well defined and extends to ``I_l -> I_r``."""
    if not has_aaip(q):
        raise NotAAIP(f"{q!r} lacks the antiautomorphic inverse property")
    sub = _as_subloop(q, s)
    inv = q.inverses
    mapping: dict[Block, Block] = {}
    well_defined = True
    for x in range(q.n):
        left = coset(q, sub.elements, x, "left")
        right = coset(q, sub.elements, inv[x], "right")
        if mapping.setdefault(left, right) != right:
            well_defined = False
    if not well_defined:
        return AAIPCheck(False, mapping, False)
    il = semilattice(q, sub, "left")
    ir = semilattice(q, sub, "right")
    if len(set(mapping.values())) != len(mapping) or set(mapping.values()) != set(ir.maximal):
        return AAIPCheck(False, mapping, True)
    return AAIPCheck(semilattice_extension_test(il, ir, mapping), mapping, True)
