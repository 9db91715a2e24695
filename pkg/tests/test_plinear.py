from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triodrot.core import CENTER, TriodPoint
from triodrot.errors import OutsideHull
from triodrot.generator import family
from triodrot.plinear import (
    BasicInterval,
    build,
    center_germs,
    evaluate,
    fold_points,
    modality,
    preimages_of_zero,
)

from .conftest import patterns
from .oracles import reference_evaluate

F = Fraction


def test_basic_intervals(s0, p7, p5):
    m = build(s0)
    assert [I.label() for I in m.intervals] == ["b0[0,1]", "b1[0,1]", "b2[0,1]"]
    assert [m.evaluate(TriodPoint(b, 1)) for b in range(3)] == [TriodPoint(b, 1) for b in (1, 2, 0)]
    per_branch = lambda M: [sum(1 for I in M.intervals if I.branch == b) for b in range(3)]
    assert per_branch(build(p7)) == [3, 2, 2]
    assert per_branch(build(p5)) == [2, 1, 2]


def test_evaluate_examples(s0, p5):
    m = build(s0)
    assert evaluate(m, TriodPoint(0, F(1, 2))) == TriodPoint(1, F(1, 2))
    assert evaluate(m, CENTER) == CENTER
    m5 = build(p5)
    # b0[1,2] runs from f(b0:1) = b1:1 through 0 to f(b0:2) = b2:1, length 2
    assert m5.evaluate(TriodPoint(0, F(3, 2))) == CENTER
    assert m5.evaluate(TriodPoint(0, F(5, 4))) == TriodPoint(1, F(1, 2))
    assert m5.evaluate(TriodPoint(0, F(7, 4))) == TriodPoint(2, F(1, 2))


def test_outside_hull(p7):
    with pytest.raises(OutsideHull):
        build(p7).evaluate(TriodPoint(1, F(5, 2)))


def test_preimages_of_zero(s0, p7, p5):
    assert preimages_of_zero(build(s0)) == [CENTER]
    assert preimages_of_zero(build(p7)) == [CENTER, TriodPoint(0, F(8, 3))]
    assert preimages_of_zero(build(p5)) == [CENTER, TriodPoint(0, F(3, 2))]


def test_modality_examples(s0, p7, p5):
    assert modality(build(s0)) == 1
    assert modality(build(p7)) == 2
    assert fold_points(build(p7)) == [TriodPoint(0, F(2))]
    assert center_germs(build(p7)) == {0: 1, 1: 2, 2: 0}
    assert modality(build(p5)) == 2


def test_modality_merges_only_distinct_germs():
    # both rank-1 points of b1 and b2 go to b0: they cannot share a monotone piece
    from triodrot.core import TriodPattern

    P = TriodPattern(((0, 1), (1, 1), (0, 2), (2, 1)))
    assert center_germs(build(P)) == {0: 1, 1: 0, 2: 0}
    # one fold at b0:1; the laps through 0 split into {b0, b1} and {b2}
    assert fold_points(build(P)) == [TriodPoint(0, F(1))]
    assert modality(build(P)) == 3


def test_cover_and_pullback(p7):
    m = build(p7)
    fold = BasicInterval(0, F(2), F(3))
    assert m.image_range(fold, 1) == (0, 2) and m.image_range(fold, 0) == (0, 1)
    assert m.covers(fold, BasicInterval(1, F(1), F(2)))
    assert m.pullback(fold, 1, F(0), F(2)) == (F(2), F(8, 3))
    assert m.pullback(fold, 2, F(0), F(1)) is None


@given(patterns(), st.data())
def test_evaluate_matches_reference(P, data):
    m = build(P)
    b = data.draw(st.sampled_from([b for b in range(3) if P.counts[b]]))
    num = data.draw(st.integers(min_value=1, max_value=12 * P.counts[b]))
    x = TriodPoint(b, F(num, 12))
    y = m.evaluate(x)
    ref = reference_evaluate(P.steps, b, F(num, 12))
    assert (y.branch, y.dist) == (ref[0], ref[1])


@given(patterns())
def test_pattern_points_map_to_successors(P):
    m = build(P)
    assert all(m.evaluate(P.point(k)) == P.point(k + 1) for k in range(P.period))


@given(patterns())
def test_continuity_at_shared_endpoints(P):
    m = build(P)
    for I in m.intervals:
        lo_img, hi_img = m.endpoint_images(I)
        assert lo_img == (CENTER if I.lo == 0 else m.evaluate(TriodPoint(I.branch, I.lo)))
        assert hi_img == m.evaluate(TriodPoint(I.branch, I.hi))
        # approaching from inside the interval
        eps = F(1, 10**6)
        near = m.evaluate(TriodPoint(I.branch, I.hi - eps))
        dist = abs(near.dist - hi_img.dist) if near.branch == hi_img.branch else near.dist + hi_img.dist
        assert dist <= 10 * eps * max(1, I.hi)


def test_modality_equals_zero_count_on_generated_twists():
    from math import gcd

    for q in range(4, 20):
        for p in range(1, q):
            if gcd(p, q) == 1 and 0 < F(p, q) < F(1, 2) and F(p, q) != F(1, 3):
                for P in family(p, q).members:
                    m = build(P)
                    assert modality(m) == len(preimages_of_zero(m)) == 2
