"""Unimodal twist patterns for a given rotation number.

Points are labelled from the end of their branch toward the branching
point (``x_1`` outermost) while building, then converted to ranks.

Below 1/3 the branch ``i`` carries ``q - 2p`` points ``x_j`` and the two
following branches ``p`` points ``y_j`` and ``z_j``. The outer ``q - 3p``
points of ``x`` shift inward by ``p``; the rest feed ``y``, which feeds
``z``, which feeds the outer ``x``.

Between 1/3 and 1/2 the branch ``i`` carries ``p`` points ``x_j``, the next
branch ``q - 2p`` points ``y_j`` and the last ``p`` points ``z_j``. The outer
``3p - q`` points of ``x`` land in order on the inner end of ``z``, the
remaining ones on ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import THIRD, TriodPattern, canonical_form, flip_related, rotation_pair
from .errors import BadRho
from .plinear import build, modality

Label = tuple[str, int]


def _check_rho(p: int, q: int, lo: Fraction, hi: Fraction) -> Fraction:
    if q <= 0 or p <= 0 or math.gcd(p, q) != 1:
        raise BadRho(f"({p},{q}) is not a coprime pair of positive integers")
    rho = Fraction(p, q)
    if not lo < rho < hi:
        raise BadRho(f"rotation number {rho} outside ({lo}, {hi})")
    return rho


def _assemble(succ: dict[Label, Label], sizes: dict[str, int], branch_of: dict[str, int]) -> TriodPattern:
    start = ("x", 1)
    steps = []
    label = start
    while True:
        name, j = label
        steps.append((branch_of[name], sizes[name] - j + 1))
        label = succ[label]
        if label == start:
            break
    if len(steps) != len(succ):
        raise AssertionError(f"labels split into several cycles ({len(steps)} of {len(succ)})")
    return TriodPattern(tuple(steps))


def _postconditions(P: TriodPattern, p: int, q: int) -> TriodPattern:
    # local import: twist depends on plinear/graphs only, never on this module
    from .twist import is_twist

    rp = rotation_pair(P)
    assert (rp.p, rp.q) == (p, q), f"rotation pair {rp} != ({p},{q})"
    assert is_twist(P).is_twist, f"{P.inline()} is not a twist"
    assert modality(build(P)) == 2
    return P


def generate_low(p: int, q: int, i: int = 0) -> TriodPattern:
    _check_rho(p, q, Fraction(0), THIRD)
    n = q - 2 * p
    succ: dict[Label, Label] = {}
    for j in range(1, q - 3 * p + 1):
        succ[("x", j)] = ("x", j + p)
    for j in range(1, p + 1):
        succ[("x", q - 3 * p + j)] = ("y", j)
        succ[("y", j)] = ("z", j)
        succ[("z", j)] = ("x", j)
    sizes = {"x": n, "y": p, "z": p}
    P = _assemble(succ, sizes, {"x": i % 3, "y": (i + 1) % 3, "z": (i + 2) % 3})
    return _postconditions(P, p, q)


def generate_high(p: int, q: int, i: int = 0) -> TriodPattern:
    _check_rho(p, q, THIRD, Fraction(1, 2))
    r = 3 * p - q
    succ: dict[Label, Label] = {}
    for j in range(1, p + 1):
        succ[("x", j)] = ("z", q - 2 * p + j) if j <= r else ("y", j - r)
        succ[("z", j)] = ("x", j)
    for j in range(1, q - 2 * p + 1):
        succ[("y", j)] = ("z", j)
    sizes = {"x": p, "y": q - 2 * p, "z": p}
    P = _assemble(succ, sizes, {"x": i % 3, "y": (i + 1) % 3, "z": (i + 2) % 3})
    return _postconditions(P, p, q)


def generate(p: int, q: int, i: int = 0) -> TriodPattern:
    """Unimodal twist of rotation number ``p/q`` built on branch ``i``."""
    rho = Fraction(p, q)
    if rho == THIRD:
        raise BadRho("rotation number 1/3 has a catalog, not a generator")
    return generate_low(p, q, i) if rho < THIRD else generate_high(p, q, i)


S0 = TriodPattern(((0, 1), (1, 1), (2, 1)))


def catalog_member(i: int) -> TriodPattern:
    """``S_0`` or, for ``i`` in 1..3, the two-branch pattern anchored at ``b_{i-1}``."""
    if i == 0:
        return S0
    if i not in (1, 2, 3):
        raise ValueError("catalog members are numbered 0..3")
    b = i - 1
    return TriodPattern(((b, 2), (b, 1), ((b + 1) % 3, 1)))


@dataclass(frozen=True)
class TwistFamily:
    rho: Fraction
    members: tuple[TriodPattern, ...]
    catalog: bool = False

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def catalog_one_third() -> TwistFamily:
    members = tuple(catalog_member(i) for i in range(4))
    return TwistFamily(THIRD, members, catalog=True)


def family(p: int, q: int) -> TwistFamily:
    if q > 0 and p > 0 and Fraction(p, q) == THIRD and math.gcd(p, q) == 1:
        return catalog_one_third()
    _check_rho(p, q, Fraction(0), Fraction(1, 2))
    members = tuple(generate(p, q, i) for i in range(3))
    keys = {canonical_form(P).steps for P in members}
    assert len(keys) == 3, "family members coincide"
    for a in members:
        for b in members:
            assert a == b or flip_related(a, b)
    return TwistFamily(Fraction(p, q), members)


def block_double(pattern: TriodPattern) -> TriodPattern:
    """Period-doubled pattern: every point splits into an adjacent pair.

    The orbit runs once around the outer copies and then once around the
    inner copies, so each pair of the doubled orbit is a block mapped onto
    the next pair.
    """
    outer = [(b, 2 * r) for b, r in pattern.steps]
    inner = [(b, 2 * r - 1) for b, r in pattern.steps]
    return TriodPattern(tuple(outer + inner))
