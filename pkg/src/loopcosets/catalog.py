"""Built-in loops: small groups and three hardcoded nonassociative tables.

Names are stable identifiers.  Parametric families are spelled ``C7``,
``D10``, ``Dic12`` and products ``C2xC4``.
"""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

from .errors import UnknownName
from .loop import LoopTable, validate


def relabel(header: Sequence[str], rows: Sequence[Sequence[str]], name: str | None = None) -> LoopTable:
    """Ingest a table printed with arbitrary symbols.

    ``header`` lists the column labels; the first one must be the identity.
    Symbols become ``0..n-1`` in header order.
    """
    index = {s: i for i, s in enumerate(header)}
    return validate([[index[s] for s in row] for row in rows], name)


# Loop of order 10 with subloop {0,1,2} whose left and right coset designs
# are both Fano planes.
_INTRO10 = """
0 1 2 3 4 5 6 7 8 9
1 2 0 4 5 6 7 8 9 3
2 0 1 6 7 8 9 3 4 5
3 4 6 2 0 7 5 9 1 8
4 5 7 0 3 9 8 1 6 2
5 6 8 7 9 3 1 4 2 0
6 7 9 5 8 1 3 2 0 4
7 8 3 9 1 4 2 0 5 6
8 9 4 1 6 2 0 5 3 7
9 3 5 8 2 0 4 6 7 1
"""

# Smallest nonassociative Moufang loop M(S3,2), transcribed over 1..9,a,b,c.
_CHEIN12 = """
1 2 3 4 5 6 7 8 9 a b c
2 1 4 3 6 5 8 7 c b a 9
3 6 5 2 1 4 9 a b c 7 8
4 5 6 1 2 3 a 9 8 7 c b
5 4 1 6 3 2 b c 7 8 9 a
6 3 2 5 4 1 c b a 9 8 7
7 8 b a 9 c 1 2 5 4 3 6
8 7 c 9 a b 2 1 4 5 6 3
9 c 7 8 b a 3 4 1 6 5 2
a b 8 7 c 9 4 3 6 1 2 5
b a 9 c 7 8 5 6 3 2 1 4
c 9 a b 8 7 6 5 2 3 4 1
"""

# Order 6 loop with five left but three right cosets of {1,2},
# transcribed over 1..6.
_EXAMPLE6 = """
1 2 3 4 5 6
2 1 4 3 6 5
3 4 5 6 1 2
4 5 6 1 2 3
5 6 1 2 3 4
6 3 2 5 4 1
"""


def _parse_printed(text: str, name: str) -> LoopTable:
    rows = [line.split() for line in text.strip().splitlines()]
    return relabel(rows[0], rows, name)


# -- group builders ---------------------------------------------------------


def from_permutations(elements: Sequence[Sequence[int]], name: str | None = None) -> LoopTable:
    """Cayley table of a permutation group listed with the identity first.

    The product ``p*q`` applies ``p`` first, then ``q``.
    """
    elements = [tuple(p) for p in elements]
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[tuple(q[v] for v in p)] for q in elements] for p in elements]
    return validate(table, name)


def permutation_closure(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All elements generated by ``generators``, identity first, then BFS order."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    out = [ident]
    seen = {ident}
    i = 0
    while i < len(out):
        p = out[i]
        for g in generators:
            r = tuple(g[v] for v in p)
            if r not in seen:
                seen.add(r)
                out.append(r)
        i += 1
    return out


def cyclic(n: int) -> LoopTable:
    if n < 1:
        raise ValueError("order must be positive")
    return validate([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}")


def _metacyclic(k: int, sq: int, name: str) -> LoopTable:
    # elements a^i x^j (index i + k*j) with x a x^-1 = a^-1 and x^2 = a^sq
    def mult(u, v):
        i, j = u % k, u // k
        p, q = v % k, v // k
        e = (i + (p if j == 0 else -p)) % k
        if j + q == 2:
            return (e + sq) % k
        return e + k * (j + q)

    n = 2 * k
    return validate([[mult(u, v) for v in range(n)] for u in range(n)], name)


def dihedral(order: int) -> LoopTable:
    """Dihedral group of the given (even) order; ``dihedral(2k)`` has ``k`` rotations."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and positive")
    return _metacyclic(order // 2, 0, f"D{order}")


def dicyclic(order: int) -> LoopTable:
    """Dicyclic group of order ``4t``: ``a^(2t) = 1``, ``x^2 = a^t``, ``x a x^-1 = a^-1``."""
    if order < 4 or order % 4:
        raise ValueError("dicyclic order must be a multiple of 4")
    k = order // 2
    return _metacyclic(k, k // 2, f"Dic{order}")


def quaternion8() -> LoopTable:
    q = dicyclic(8)
    return LoopTable(q.cayley, "Q8")


def dicyclic12() -> LoopTable:
    """The group of order 12 that is none of C3xV4, A4, D12 (besides C12)."""
    return dicyclic(12)


def symmetric_group(k: int = 3) -> LoopTable:
    """``S_k``.  For ``k = 3`` elements are ordered id, s, sr, r, r^2, sr^2."""
    if k == 3:
        s = (1, 0, 2)
        r = (1, 2, 0)

        def comp(p, q):  # p then q
            return tuple(q[v] for v in p)

        ident = (0, 1, 2)
        r2 = comp(r, r)
        elements = [ident, s, comp(s, r), r, r2, comp(s, r2)]
        return from_permutations(elements, "S3")
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return from_permutations(permutation_closure(gens), f"S{k}")


def alternating_group(k: int = 4) -> LoopTable:
    if k < 3:
        return LoopTable(cyclic(1).cayley, f"A{k}")
    # 3-cycles (0 1 i) generate A_k
    gens = []
    for i in range(2, k):
        p = list(range(k))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(tuple(p))
    return from_permutations(permutation_closure(gens), f"A{k}")


def direct_product(a: LoopTable, b: LoopTable) -> LoopTable:
    """``(a1, b1)(a2, b2)``; pair ``(x, y)`` has index ``x * |b| + y``."""
    na, nb = a.n, b.n
    table = [
        [a.cayley[x1][x2] * nb + b.cayley[y1][y2] for x2, y2 in product(range(na), range(nb))]
        for x1, y1 in product(range(na), range(nb))
    ]
    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return validate(table, name)


def chein_double(g: LoopTable) -> LoopTable:
    """Chein's ``M(G, 2)`` on ``G ∪ Gu``; element ``hu`` has index ``|G| + h``.

    ``g (hu) = (hg)u``, ``(gu) h = (g h^-1)u``, ``(gu)(hu) = h^-1 g``.
    Moufang whenever ``G`` is a group; nonassociative iff ``G`` is nonabelian.
    """
    n = g.n
    inv = g.inverses
    a = g.cayley

    def mult(x, y):
        if x < n and y < n:
            return a[x][y]
        if x < n:
            return n + a[y - n][x]
        if y < n:
            return n + a[x - n][inv[y]]
        return a[inv[y - n]][x - n]

    name = f"M({g.name},2)" if g.name else None
    return validate([[mult(x, y) for y in range(2 * n)] for x in range(2 * n)], name)


def fano_blocks() -> list[frozenset[int]]:
    """Lines of the projective plane of order 2 on points 0..6."""
    return [frozenset({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]


# -- registry ---------------------------------------------------------------

_FIXED: dict[str, Callable[[], LoopTable]] = {
    "intro10": lambda: _parse_printed(_INTRO10, "intro10"),
    "chein12": lambda: _parse_printed(_CHEIN12, "chein12"),
    "example6": lambda: _parse_printed(_EXAMPLE6, "example6"),
    "V4": lambda: LoopTable(direct_product(cyclic(2), cyclic(2)).cayley, "V4"),
    "Q8": quaternion8,
    "S3": lambda: symmetric_group(3),
    "A4": lambda: alternating_group(4),
    "G12": lambda: LoopTable(dicyclic12().cayley, "G12"),
}
_ALIASES = {
    "M(S3,2)": "chein12",
    "dicyclic12": "G12",
    "quaternion8": "Q8",
    "C2xC2": "V4",
}
_FAMILIES = [
    (re.compile(r"C(\d+)$"), lambda k: cyclic(k)),
    (re.compile(r"D(\d+)$"), lambda k: dihedral(k)),
    (re.compile(r"Dic(\d+)$"), lambda k: dicyclic(k)),
    (re.compile(r"S(\d+)$"), lambda k: symmetric_group(k)),
    (re.compile(r"A(\d+)$"), lambda k: alternating_group(k)),
    (re.compile(r"cyclic\((\d+)\)$"), lambda k: cyclic(k)),
    (re.compile(r"dihedral\((\d+)\)$"), lambda k: dihedral(k)),
    (re.compile(r"dicyclic\((\d+)\)$"), lambda k: dicyclic(k)),
]

ENUMERATION_SUBLOOPS = (
    "V4", "S3", "C2xC4", "C2xC2xC2", "D8", "Q8", "C3xC3", "D10",
    "C3xV4", "A4", "D12", "G12", "chein12", "D14",
)


def names() -> list[str]:
    """Fixed names, aliases and the parametric family patterns."""
    return sorted(_FIXED) + sorted(_ALIASES) + [
        "C<n>", "D<2k>", "Dic<4t>", "S<k>", "A<k>", "cyclic(n)", "dihedral(2k)", "dicyclic(4t)", "<name>x<name>",
    ]


def _lookup_single(name: str) -> LoopTable:
    name = _ALIASES.get(name, name)
    if name in _FIXED:
        return _FIXED[name]()
    for pattern, build in _FAMILIES:
        m = pattern.match(name)
        if m:
            try:
                return build(int(m.group(1)))
            except ValueError as exc:
                raise UnknownName(name) from exc
    if name.startswith("M(") and name.endswith(",2)"):
        return chein_double(catalog(name[2:-3]))
    raise UnknownName(name)


@lru_cache(maxsize=None)
def catalog(name: str) -> LoopTable:
    """Look up a loop by name; products like ``C3xV4`` are built left to right."""
    name = name.strip()
    if name.startswith("catalog:"):
        name = name[len("catalog:"):]
    try:
        return _lookup_single(name)
    except UnknownName:
        if "x" not in name or name.startswith("M("):
            raise
    parts = name.split("x")
    if not all(parts):
        raise UnknownName(name)
    q = _lookup_single(parts[0])
    for part in parts[1:]:
        q = direct_product(q, _lookup_single(part))
    return LoopTable(q.cayley, name)
