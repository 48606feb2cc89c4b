import pytest
from hypothesis import given, strategies as st

from loopcosets.bolenum import build_context, enumerate_orbits, relabel_rectangle
from loopcosets.catalog import catalog
from loopcosets.loop import all_subloops, subloop
from loopcosets.orbits import (
    action_rectangle,
    forward_closure,
    lagrange_report,
    orbit_length_counts,
    orbit_lengths_in_enumerated,
    relative_orbits,
)

from conftest import loops, naive_orbits


def test_chein12_s3_orbits():
    q = catalog("chein12")
    part = relative_orbits(q, range(6))
    assert part.lengths() == [6, 6]
    assert orbit_lengths_in_enumerated(q, range(6), {6: 2, 18: 1})
    assert not orbit_lengths_in_enumerated(q, range(6), [18])


def test_chein12_lagrange():
    q = catalog("chein12")
    for rec in lagrange_report(q, [0, 1, 6, 7]):
        assert rec.remainder == 0
        assert rec.cover is not None
    counts = orbit_length_counts(q, [0, 1, 6, 7])
    assert sum(k * v for k, v in counts.items()) == 12
    assert all(k % 4 == 0 for k in counts)


def test_intro10_orbit_outside_s_is_not_divisible():
    part = relative_orbits(catalog("intro10"), [0, 1, 2])
    assert part.lengths() == [3, 7]
    inner, outer = lagrange_report(catalog("intro10"), [0, 1, 2])
    assert inner.remainder == 0 and inner.cover == (0,)
    assert outer.remainder == 1 and outer.cover is None


def test_orbit_of():
    part = relative_orbits(catalog("chein12"), range(6))
    assert part.orbit_of(7) == frozenset(range(6, 12))


def test_action_rectangle_of_group_coset():
    q = catalog("S3")
    sub = subloop(q, [0, 3, 4])
    rect = action_rectangle(q, sub, 0)
    assert rect == sub.table().cayley


@pytest.mark.parametrize(
    "loop, elements",
    [("chein12", range(6)), ("chein12", [0, 1, 6, 7]), ("D8", None), ("M(D8,2)", None), ("C3xV4", None)],
)
def test_actual_orbits_are_enumerated(loop, elements):
    q = catalog(loop)
    subs = [subloop(q, elements)] if elements is not None else [s for s in all_subloops(q) if 1 < s.m <= 4]
    for sub in subs:
        rects = set(enumerate_orbits(build_context(sub.table())).rectangles)
        for orb in relative_orbits(q, sub).orbits:
            for root in orb:
                assert action_rectangle(q, sub, root) in rects


@given(loops(), st.data())
def test_orbits_match_union_find(q, data):
    s = data.draw(st.sampled_from(all_subloops(q)))
    part = relative_orbits(q, s)
    assert list(part.orbits) == naive_orbits(q, s.elements)
    assert list(relative_orbits(q, s, bidirectional=True).orbits) == list(part.orbits)
    assert sum(part.lengths()) == q.n


@given(loops(), st.data())
def test_forward_closure_inside_orbit(q, data):
    s = data.draw(st.sampled_from(all_subloops(q)))
    x = data.draw(st.integers(0, q.n - 1))
    assert forward_closure(q, s, x) <= relative_orbits(q, s).orbit_of(x)


@given(st.sampled_from(["S3", "D8", "Q8", "V4"]), st.data())
def test_action_rectangle_reroots_consistently(name, data):
    q = catalog("M(%s,2)" % name) if name != "V4" else catalog("C2xC2xC2")
    s = data.draw(st.sampled_from([t for t in all_subloops(q) if 1 < t.m < q.n]))
    orb = sorted(data.draw(st.sampled_from(relative_orbits(q, s).orbits)))
    a, b = data.draw(st.sampled_from(orb)), data.draw(st.sampled_from(orb))
    ra = action_rectangle(q, s, a)
    # rerooting the table at b's label gives b's own table
    label_of_b = _labels(q, s, a)[b]
    assert relabel_rectangle(ra, label_of_b) == action_rectangle(q, s, b)


def _labels(q, s, root):
    """Point -> canonical label, reproduced from the scan order."""
    els = s.elements
    order = [q.cayley[root][t] for t in els]
    label = {y: i for i, y in enumerate(order)}
    r = 0
    while r < len(order):
        for t in els:
            y = q.cayley[order[r]][t]
            if y not in label:
                label[y] = len(order)
                order.append(y)
        r += 1
    return label
