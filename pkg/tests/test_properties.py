import pytest
from hypothesis import given

from loopcosets.catalog import catalog
from loopcosets.loop import is_automorphism, opposite
from loopcosets.properties import (
    check_properties,
    has_aaip,
    has_left_inverse_property,
    has_right_inverse_property,
    is_left_automorphic,
    is_left_bol,
    is_moufang,
    is_power_associative,
    is_right_bol,
)

from conftest import loops, naive_moufang, naive_right_bol


def left_mult_group(q):
    """Closure of the left translations under composition."""
    gens = [tuple(q.cayley[x]) for x in range(q.n)]
    group = {tuple(range(q.n))}
    frontier = list(group)
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                c = tuple(h[g[z]] for z in range(q.n))
                if c not in group:
                    group.add(c)
                    new.append(c)
        frontier = new
    return group


def naive_left_automorphic(q):
    return all(is_automorphism(q, g) for g in left_mult_group(q) if g[0] == 0)


@pytest.mark.parametrize("name", ["S3", "Q8", "A4", "C2xC4"])
def test_groups_have_every_identity(name):
    flags = check_properties(catalog(name)).as_dict()
    assert flags.pop("commutative") == (name == "C2xC4")
    assert all(flags.values())


def test_chein12_is_moufang_not_extra():
    r = check_properties(catalog("chein12"))
    assert r.moufang and r.right_bol and r.left_bol and r.aaip
    assert not r.associative and not r.extra
    assert not r.left_automorphic


def test_intro10_is_commutative_only():
    r = check_properties(catalog("intro10"))
    assert r.commutative and r.two_sided_inverses
    assert not (r.right_bol or r.power_associative or r.aaip)


def test_example6_is_left_automorphic():
    # checked here against the whole left multiplication group
    q = catalog("example6")
    assert is_left_automorphic(q)
    assert naive_left_automorphic(q)
    assert not is_right_bol(q)


@pytest.mark.parametrize("name", ["M(D8,2)", "M(Q8,2)"])
def test_chein_doubles_of_nonabelian_groups_order_8(name):
    r = check_properties(catalog(name))
    assert r.moufang and r.extra and r.left_automorphic and not r.associative


@given(loops())
def test_bol_and_moufang_match_oracles(q):
    assert is_right_bol(q) == naive_right_bol(q)
    assert is_moufang(q) == naive_moufang(q)
    assert is_left_bol(q) == naive_right_bol(opposite(q))


@given(loops(max_order=6))
def test_left_automorphic_matches_group_closure(q):
    assert is_left_automorphic(q) == naive_left_automorphic(q)


@given(loops())
def test_implications(q):
    r = check_properties(q)
    if r.associative:
        assert r.moufang
    if r.moufang:
        assert r.right_bol and r.left_bol
    if r.right_bol:
        assert r.right_inverse_property and r.power_associative
    if r.aaip:
        assert r.two_sided_inverses
    if r.extra:
        assert r.moufang


@given(loops())
def test_inverse_properties_match_definitions(q):
    inv = q.inverses
    n = q.n
    if inv is None:
        assert not has_aaip(q)
        return
    rip = all(q.mul(q.mul(x, y), inv[y]) == x for x in range(n) for y in range(n))
    lip = all(q.mul(inv[x], q.mul(x, y)) == y for x in range(n) for y in range(n))
    aaip = all(inv[q.mul(x, y)] == q.mul(inv[y], inv[x]) for x in range(n) for y in range(n))
    assert has_right_inverse_property(q) == rip
    assert has_left_inverse_property(q) == lip
    assert has_aaip(q) == aaip


@given(loops())
def test_power_associative_matches_definition(q):
    from loopcosets.loop import subloop_closure

    def assoc(els):
        return all(q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c)) for a in els for b in els for c in els)

    expected = all(assoc(subloop_closure(q, (x,)).elements) for x in range(q.n))
    assert is_power_associative(q) == expected
