"""Variety predicates, each decided by exhaustive identity checking."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .loop import (
    LoopTable,
    _associative,
    inner_left_generators,
    is_automorphism,
    powers,
    subloop_closure,
)


@dataclass(frozen=True)
class PropertyReport:
    associative: bool
    commutative: bool
    two_sided_inverses: bool
    aaip: bool
    left_inverse_property: bool
    right_inverse_property: bool
    left_bol: bool
    right_bol: bool
    moufang: bool
    extra: bool
    power_associative: bool
    right_power_alternative: bool
    left_automorphic: bool

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)


def _grid(n):
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    return x, y, z


def is_commutative(q: LoopTable) -> bool:
    return bool(np.array_equal(q.array, q.array.T))


def has_aaip(q: LoopTable) -> bool:
    inv = q.inverses
    if inv is None:
        return False
    i = np.asarray(inv)
    a = q.array
    return bool(np.array_equal(i[a], a[i[None, :], i[:, None]]))


def has_right_inverse_property(q: LoopTable) -> bool:
    inv = q.inverses
    if inv is None:
        return False
    a = q.array
    n = q.n
    # (xy)y^-1 = x
    return bool(np.array_equal(a[a, np.asarray(inv)[None, :]], np.broadcast_to(np.arange(n)[:, None], (n, n))))


def has_left_inverse_property(q: LoopTable) -> bool:
    inv = q.inverses
    if inv is None:
        return False
    a = q.array
    n = q.n
    # x^-1(xy) = y
    return bool(np.array_equal(a[np.asarray(inv)[:, None], a], np.broadcast_to(np.arange(n)[None, :], (n, n))))


def is_right_bol(q: LoopTable) -> bool:
    a = q.array
    x, y, z = _grid(q.n)
    # x((yz)y) = ((xy)z)y
    return bool(np.array_equal(a[x, a[a[y, z], y]], a[a[a[x, y], z], y]))


def is_left_bol(q: LoopTable) -> bool:
    a = q.array
    x, y, z = _grid(q.n)
    # x(y(xz)) = (x(yx))z
    return bool(np.array_equal(a[x, a[y, a[x, z]]], a[a[x, a[y, x]], z]))


def is_moufang(q: LoopTable) -> bool:
    a = q.array
    x, y, z = _grid(q.n)
    # ((xy)x)z = x(y(xz))
    return bool(np.array_equal(a[a[a[x, y], x], z], a[x, a[y, a[x, z]]]))


def is_extra(q: LoopTable) -> bool:
    a = q.array
    x, y, z = _grid(q.n)
    # x(y(zx)) = ((xy)z)x
    return bool(np.array_equal(a[x, a[y, a[z, x]]], a[a[a[x, y], z], x]))


def is_power_associative(q: LoopTable) -> bool:
    seen: set[tuple[int, ...]] = set()
    for x in range(q.n):
        s = subloop_closure(q, (x,))
        if s.elements in seen:
            continue
        seen.add(s.elements)
        if not _associative(s.table().array):
            return False
    return True


def is_right_power_alternative(q: LoopTable) -> bool:
    """Power-associative and ``(x y^i) y^j = x y^(i+j)`` for all ``i, j``."""
    if not is_power_associative(q):
        return False
    a = q.array
    for y in range(1, q.n):
        pw = np.asarray(powers(q, y))
        k = len(pw)
        i = np.arange(k)
        # right translations by the powers of y, as columns of a
        lhs = a[a[:, pw][:, :, None], pw[None, None, :]]
        rhs = a[:, pw[(i[:, None] + i[None, :]) % k]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_left_automorphic(q: LoopTable) -> bool:
    """Every generator ``L(x, y)`` of the left inner mapping group is an automorphism."""
    seen = set()
    for g in inner_left_generators(q):
        if g in seen:
            continue
        seen.add(g)
        if not is_automorphism(q, g):
            return False
    return True


def check_properties(q: LoopTable) -> PropertyReport:
    inv = q.inverses
    return PropertyReport(
        associative=q.is_associative(),
        commutative=is_commutative(q),
        two_sided_inverses=inv is not None,
        aaip=has_aaip(q),
        left_inverse_property=has_left_inverse_property(q),
        right_inverse_property=has_right_inverse_property(q),
        left_bol=is_left_bol(q),
        right_bol=is_right_bol(q),
        moufang=is_moufang(q),
        extra=is_extra(q),
        power_associative=is_power_associative(q),
        right_power_alternative=is_right_power_alternative(q),
        left_automorphic=is_left_automorphic(q),
    )
