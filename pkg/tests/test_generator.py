from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triodrot.core import THIRD, canonical_form, flip_related, one_third_flip, rotation_pair
from triodrot.errors import BadRho
from triodrot.generator import (
    S0,
    block_double,
    catalog_member,
    catalog_one_third,
    family,
    generate,
    generate_high,
    generate_low,
)
from triodrot.oracle import census_patterns
from triodrot.plinear import build, modality
from triodrot.twist import BLACK, GREEN, RED, color_table, is_twist

from .conftest import P5_STEPS, P7_STEPS

F = Fraction


def coprime_pairs(q_max: int, lo: Fraction, hi: Fraction):
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1 and lo < F(p, q) < hi:
                yield p, q


def test_low_example():
    assert generate_low(2, 7, 0).steps == P7_STEPS


def test_high_examples():
    assert generate_high(2, 5, 0).steps == P5_STEPS
    # x1 -> z2 -> x2 -> z3 -> x3 -> y1 -> z1, with x1 outermost on b0
    assert generate_high(3, 7, 0).steps == ((0, 3), (2, 2), (0, 2), (2, 1), (0, 1), (1, 1), (2, 3))


def test_branch_index_rotates_labels():
    P = generate_low(1, 4, 1)
    assert P == one_third_flip(generate_low(1, 4, 0), 1)
    assert generate(2, 7, 2) == generate_low(2, 7, 2)
    assert generate(3, 7) == generate_high(3, 7)


@pytest.mark.parametrize(
    "call",
    [
        lambda: generate_low(1, 3),
        lambda: generate_low(2, 6),
        lambda: generate_low(2, 5),
        lambda: generate_high(1, 4),
        lambda: generate_high(1, 2),
        lambda: generate(1, 3),
        lambda: generate(0, 5),
        lambda: generate(1, -4),
        lambda: family(3, 5),
    ],
)
def test_bad_rotation_numbers(call):
    with pytest.raises(BadRho):
        call()


def test_catalog():
    fam = catalog_one_third()
    assert fam.catalog and fam.rho == THIRD and len(fam) == 4
    assert fam.members[0] == S0
    assert [m.steps for m in fam.members[1:]] == [
        ((0, 2), (0, 1), (1, 1)),
        ((1, 2), (1, 1), (2, 1)),
        ((2, 2), (2, 1), (0, 1)),
    ]
    assert family(1, 3) == fam
    assert all(rotation_pair(m).rho == THIRD for m in fam)
    with pytest.raises(ValueError):
        catalog_member(4)


@pytest.mark.parametrize("p, q", list(coprime_pairs(25, F(0), F(1, 2))))
def test_family_members(p, q):
    if F(p, q) == THIRD:
        return
    fam = family(p, q)
    assert len({canonical_form(P) for P in fam}) == 3
    for P in fam:
        assert (rotation_pair(P).p, rotation_pair(P).q) == (p, q)
        assert is_twist(P).is_twist
        assert modality(build(P)) == 2
        counts = color_table(P).counts()
        if F(p, q) < THIRD:
            assert counts == {GREEN: q - 3 * p, BLACK: 3 * p, RED: 0}
        else:
            assert counts == {GREEN: 0, BLACK: 2 * q - 3 * p, RED: 3 * p - q}
    a, b, c = fam
    assert flip_related(a, b) and flip_related(b, c)


@pytest.mark.parametrize("q", range(4, 9))
def test_unique_unimodal_twist_up_to_flips(q):
    twists = [P for P in census_patterns(q) if is_twist(P).is_twist]
    for p, qq in coprime_pairs(q, F(0), F(1, 2)):
        if qq != q or F(p, q) == THIRD:
            continue
        unimodal = {P for P in twists if rotation_pair(P).p == p and modality(build(P)) == 2}
        assert unimodal == {canonical_form(P) for P in family(p, q)}


def test_block_double(p7):
    D = block_double(p7)
    assert D.period == 14 and D.counts == (6, 4, 4)
    assert (rotation_pair(D).p, rotation_pair(D).q) == (4, 14)
    assert str(is_twist(D)) == "NotTwist(NonCoprime)"


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 40).flatmap(lambda q: st.tuples(st.integers(1, q - 1), st.just(q))))
def test_generate_total_on_valid_input(pq):
    p, q = pq
    rho = F(p, q)
    valid = math.gcd(p, q) == 1 and rho < F(1, 2) and rho != THIRD
    if valid:
        assert rotation_pair(generate(p, q)).rho == rho
    else:
        with pytest.raises(BadRho):
            generate(p, q)
