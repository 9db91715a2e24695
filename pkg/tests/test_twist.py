from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from triodrot.core import THIRD, TriodPattern, has_inner_ring, one_third_flip, rotation_pair
from triodrot.errors import NotATwist
from triodrot.generator import S0, catalog_member, generate_high, generate_low
from triodrot.twist import (
    BLACK,
    CUMULATIVE,
    GREEN,
    IN_BOUND,
    LITERAL,
    NOT_APPLICABLE,
    NOT_TWIST,
    RED,
    TWIST,
    black_trains,
    chi,
    color_table,
    countries,
    has_strict_phase,
    is_order_invariant,
    is_twist,
    phase_table,
    states,
    verify_chi_bounds,
)

from .conftest import P5_STEPS, P7_STEPS, patterns

F = Fraction


def pat(text: str) -> TriodPattern:
    return TriodPattern(tuple(tuple(int(t) for t in s.split(":")) for s in text.split(",")))


def direct_phase(P: TriodPattern, base: int = 0) -> list[Fraction]:
    """k*rho minus the displacement walked from the base, summed step by step."""
    q = P.period
    rho = F(sum((P.steps[(k + 1) % q][0] - P.steps[k][0]) % 3 for k in range(q)), 3 * q)
    out = [F(0)] * q
    walked = F(0)
    for i in range(q):
        k = (base + i) % q
        out[k] = i * rho - walked
        walked += F((P.steps[(k + 1) % q][0] - P.steps[k][0]) % 3, 3)
    return out


def test_colors_of_examples(s0, p7, p5):
    assert color_table(s0).colors == (BLACK,) * 3
    t = color_table(p7)
    assert t.colors == (GREEN,) + (BLACK,) * 6
    assert t.bounds[0] == IN_BOUND and t.outbound_green() == []
    assert color_table(p5).counts() == {GREEN: 0, BLACK: 4, RED: 1}
    assert color_table(p5).color_of((0, 2)) == RED


def test_phase_tables(s0, p7, p5):
    assert phase_table(s0).values == (0, 0, 0)
    assert phase_table(s0, LITERAL).values == (0, F(1, 3), F(2, 3))
    assert phase_table(p7).values == (0, F(2, 7), F(5, 21), F(4, 21), F(1, 7), F(2, 21), F(1, 21))
    assert phase_table(p5).values == (0, F(-4, 15), F(-1, 5), F(-2, 15), F(-1, 15))
    with pytest.raises(ValueError):
        phase_table(s0, "other")


def test_chi_values(s0, p7, p5):
    assert chi(s0) == 0 and chi(s0, variant=LITERAL) == F(2, 3)
    assert chi(p7) == F(2, 7)
    assert chi(p5) == F(4, 15)
    assert chi(p7, subset=[(0, 1), (0, 2)]) == F(2, 7) - F(1, 7)
    with pytest.raises(ValueError):
        chi(p7, subset=[])


def test_catalog_chi():
    assert [chi(catalog_member(i), variant=LITERAL) for i in range(4)] == [F(2, 3)] * 4
    assert [chi(catalog_member(i)) for i in range(4)] == [0, THIRD, THIRD, THIRD]


def test_states_and_countries_of_p7(p7):
    got = [(s.color, s.branch, s.ranks) for s in states(p7)]
    assert got == [(BLACK, 0, (1, 2)), (GREEN, 0, (3,)), (BLACK, 1, (1, 2)), (BLACK, 2, (1, 2))]
    (c,) = countries(p7)
    assert c.points == ((0, 3),) and c.innermost == (0, 3)
    assert c.kappa == (0, 1) and c.lam == (1, 1)
    # lam is black on b1 and no country reaches b1
    assert c.successor is None


def test_black_trains(s0, p7):
    assert black_trains(s0) == [S0.steps]
    assert black_trains(p7) == [P7_STEPS[1:]]


@pytest.mark.parametrize(
    "text, reason",
    [
        ("2:1,2:2,2:3", "df<3"),
        ("0:1,1:1,2:1,2:2", "NoInnerRing"),
        ("0:1,1:1,2:2,2:3,2:1", "OutboundGreen"),
        ("0:1,1:1,2:2,1:2,2:1", "NotOrderInvariant"),
        ("0:1,1:1,2:2,1:2,2:3,2:1", "NonCoprime"),
        ("0:1,1:1,2:2,1:2,2:4,2:3,2:1", "RedBelowThird"),
        ("0:1,1:1,2:1,0:2,2:3,2:2,1:2", "GreenAboveThird"),
        ("0:1,1:1,2:2,1:2,2:3,0:2,2:1", "PhaseNotStrict"),
    ],
)
def test_negative_verdicts(text, reason):
    v = is_twist(pat(text))
    assert not v.is_twist and v.reason == reason
    assert v.kind == (NOT_APPLICABLE if reason == "df<3" else NOT_TWIST)


def test_order_invariance_witness():
    P = pat("0:1,1:1,2:2,1:2,2:1")
    # on b1 the outer point maps inside the image of the inner one
    assert is_order_invariant(P).witness == ((1, 2), (1, 1))
    assert is_twist(P).witness == ((1, 2), (1, 1))


def test_positive_verdicts(s0, p7, p5):
    for P in (s0, p7, p5):
        v = is_twist(P)
        assert v.kind == TWIST and str(v) == "Twist" and v.normalized == P


def test_reflected_ring_is_normalized():
    P = TriodPattern(tuple((b, r) for b, r in ((0, 1), (2, 1), (1, 1))))
    v = is_twist(P)
    assert v.is_twist and v.normalized == S0
    assert rotation_pair(P).p == 2  # the given orientation turns the other way


def test_chi_bounds_examples(p7, p5):
    low = verify_chi_bounds(p7)
    assert low.ok and low.modality == 2
    assert {c.name for c in low.checks if c.gated} == {"green_state", "chi_total"}
    high = verify_chi_bounds(p5)
    assert high.ok and {c.name for c in high.checks if c.gated} == {"red_state", "chi_total"}
    with pytest.raises(NotATwist):
        verify_chi_bounds(pat("0:1,1:1,2:2,2:3,2:1"))
    report = verify_chi_bounds(pat("0:1,1:1,2:2,2:3,2:1"), require_twist=False)
    assert report.chi_cumulative == chi(report.pattern)


def test_generated_twists_meet_gated_bounds():
    for q in range(4, 16):
        for p in range(1, q):
            rho = F(p, q)
            if rho.denominator != q or rho == THIRD or not F(1, 4) <= rho <= F(1, 2):
                continue
            gen = generate_low if rho < THIRD else generate_high
            for i in range(3):
                assert verify_chi_bounds(gen(p, q, i)).ok


@settings(max_examples=150, deadline=None)
@given(patterns(max_period=8))
def test_phase_matches_direct_sum(P):
    for base in (0, P.period - 1):
        assert list(phase_table(P, CUMULATIVE, base).values) == direct_phase(P, base)


@settings(max_examples=150, deadline=None)
@given(patterns(max_period=8))
def test_phase_differences_do_not_depend_on_base(P):
    q = P.period
    ref = phase_table(P).values
    for base in range(q):
        vals = phase_table(P, base=base).values
        shift = vals[0] - ref[0]
        assert all(vals[k] - ref[k] == shift for k in range(q))


@settings(max_examples=200, deadline=None)
@given(patterns(max_period=9, df3=True))
def test_red_equals_green_at_one_third(P):
    if rotation_pair(P).rho == THIRD:
        t = color_table(P)
        assert t.count(RED) == t.count(GREEN)


@settings(max_examples=200, deadline=None)
@given(patterns(max_period=8))
def test_verdict_is_flip_invariant(P):
    v = is_twist(P).kind
    for j in (1, 2):
        assert is_twist(one_third_flip(P, j)).kind == v
    assert is_twist(P.reindexed(1)).kind == v


@settings(max_examples=200, deadline=None)
@given(patterns(max_period=8))
def test_order_invariance_against_definition(P):
    ok = all(
        not (P.image(x)[0] == P.image(y)[0] and P.image(x)[1] < P.image(y)[1])
        for x in P.steps
        for y in P.steps
        if x[0] == y[0] and x[1] > y[1]
    )
    assert is_order_invariant(P).ok == ok


@settings(max_examples=150, deadline=None)
@given(patterns(max_period=8, df3=True))
def test_twists_have_clean_colors(P):
    v = is_twist(P)
    if not v.is_twist:
        return
    N = v.normalized
    assert has_inner_ring(N) and rotation_pair(N).coprime
    t = color_table(N)
    rho = rotation_pair(N).rho
    assert not t.outbound_green()
    assert rho <= THIRD or t.count(GREEN) == 0
    assert rho >= THIRD or t.count(RED) == 0
    assert has_strict_phase(N).ok
