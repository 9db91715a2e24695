"""Triod points, cyclic patterns and rotation arithmetic.

A pattern of period ``q`` is stored as the sequence of ``(branch, rank)``
placements visited by the orbit, step ``k`` mapping to step ``k + 1 mod q``.
Ranks count outward from the branching point: rank 1 is the point of the
branch closest to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import CenterPoint, InvalidPattern, NoInnerRing

BRANCHES = (0, 1, 2)
THIRD = Fraction(1, 3)

Placement = tuple[int, int]


@dataclass(frozen=True, order=True)
class TriodPoint:
    """A point of the triod; ``branch is None`` is the branching point."""

    branch: int | None
    dist: Fraction

    def __post_init__(self):
        dist = Fraction(self.dist)
        object.__setattr__(self, "dist", dist)
        if self.branch is None:
            if dist != 0:
                raise ValueError("the branching point has distance 0")
        else:
            if self.branch not in BRANCHES:
                raise ValueError(f"branch must be 0, 1 or 2, got {self.branch}")
            if dist <= 0:
                raise ValueError("points off the branching point have positive distance")

    @classmethod
    def at(cls, branch: int | None, dist) -> "TriodPoint":
        """Like the constructor but maps distance 0 to the branching point."""
        dist = Fraction(dist)
        if dist == 0:
            return CENTER
        return cls(branch, dist)

    @property
    def is_center(self) -> bool:
        return self.branch is None

    def __str__(self) -> str:
        if self.branch is None:
            return "0"
        return f"b{self.branch}@{self.dist}"


CENTER = TriodPoint(None, Fraction(0))


def branch_shift(src: int, dst: int) -> int:
    """Number of steps ``j`` with ``dst = src + j (mod 3)``."""
    return (dst - src) % 3


def displacement(x: TriodPoint | int, y: TriodPoint | int) -> Fraction:
    """Displacement ``j/3`` from ``x`` on branch ``i`` to ``y`` on branch ``i + j``.

    Accepts points or bare branch indices.
    """
    bx = x.branch if isinstance(x, TriodPoint) else x
    by = y.branch if isinstance(y, TriodPoint) else y
    if bx is None or by is None:
        raise CenterPoint("displacement is undefined at the branching point")
    return Fraction(branch_shift(bx, by), 3)


@dataclass(frozen=True)
class RotationPair:
    p: int
    q: int

    @property
    def rho(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def coprime(self) -> bool:
        return math.gcd(self.p, self.q) == 1

    def modified(self) -> "ModifiedRotationPair":
        u = math.gcd(self.p, self.q)
        return ModifiedRotationPair(Fraction(self.p, self.q), u)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class ModifiedRotationPair:
    rho: Fraction
    mult: int

    def __str__(self) -> str:
        return f"({self.rho},{self.mult})"


@dataclass(frozen=True, eq=False)
class TriodPattern:
    """A cycle on the triod up to branch- and order-preserving conjugacy.

    Equality and hashing go through :func:`canonical_form`, so two patterns
    that differ only by where the orbit listing starts compare equal.
    ``steps`` keeps the listing as given.
    """

    steps: tuple[Placement, ...]

    def __post_init__(self):
        steps = tuple((int(b), int(r)) for b, r in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise InvalidPattern("a pattern needs at least one point")
        if len(set(steps)) != len(steps):
            raise InvalidPattern("a placement occurs twice; the orbit is not a single cycle")
        by_branch: dict[int, list[int]] = {b: [] for b in BRANCHES}
        for b, r in steps:
            if b not in BRANCHES:
                raise InvalidPattern(f"branch {b} is not one of 0, 1, 2")
            if r < 1:
                raise InvalidPattern(f"rank {r} on branch {b} is not positive")
            by_branch[b].append(r)
        for b, ranks in by_branch.items():
            if sorted(ranks) != list(range(1, len(ranks) + 1)):
                raise InvalidPattern(f"ranks on branch {b} are not 1..{len(ranks)}")

    @classmethod
    def of(cls, steps: Iterable[Sequence[int]]) -> "TriodPattern":
        return cls(tuple(tuple(s) for s in steps))

    @property
    def period(self) -> int:
        return len(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def branch(self, k: int) -> int:
        return self.steps[k % self.period][0]

    def rank(self, k: int) -> int:
        return self.steps[k % self.period][1]

    @cached_property
    def counts(self) -> tuple[int, int, int]:
        c = [0, 0, 0]
        for b, _ in self.steps:
            c[b] += 1
        return tuple(c)

    @cached_property
    def step_of(self) -> dict[Placement, int]:
        return {pl: k for k, pl in enumerate(self.steps)}

    def image(self, placement: Placement) -> Placement:
        k = self.step_of[placement]
        return self.steps[(k + 1) % self.period]

    def point(self, k: int) -> TriodPoint:
        b, r = self.steps[k % self.period]
        return TriodPoint(b, Fraction(r))

    def displacements(self) -> tuple[Fraction, ...]:
        q = self.period
        return tuple(displacement(self.branch(k), self.branch(k + 1)) for k in range(q))

    @cached_property
    def _key(self) -> tuple[Placement, ...]:
        return canonical_form(self).steps

    def __eq__(self, other):
        if not isinstance(other, TriodPattern):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ",".join(f"({b},{r})" for b, r in self.steps)
        return f"TriodPattern[{inner}]"

    def inline(self) -> str:
        """Compact one-line form ``b:r,b:r,...`` used by CLI listings."""
        return ",".join(f"{b}:{r}" for b, r in self.steps)

    def reindexed(self, start: int) -> "TriodPattern":
        """Same pattern listed from step ``start``."""
        s = start % self.period
        return TriodPattern(self.steps[s:] + self.steps[:s])


def rotation_pair(pattern: TriodPattern) -> RotationPair:
    total = sum(pattern.displacements())
    if total.denominator != 1:
        raise InvalidPattern("total displacement of a cycle must be an integer")
    return RotationPair(int(total), pattern.period)


def modified_rotation_pair(pattern: TriodPattern) -> ModifiedRotationPair:
    return rotation_pair(pattern).modified()


def degrees_of_freedom(pattern: TriodPattern) -> int:
    return sum(1 for c in pattern.counts if c > 0)


def canonical_form(pattern: TriodPattern) -> TriodPattern:
    start = min(range(pattern.period), key=lambda k: pattern.steps[k])
    return TriodPattern(pattern.steps[start:] + pattern.steps[:start])


def relabel(pattern: TriodPattern, mapping: Sequence[int]) -> TriodPattern:
    """Apply the branch permutation ``b -> mapping[b]``; ranks unchanged."""
    if sorted(mapping) != [0, 1, 2]:
        raise ValueError(f"{mapping!r} is not a permutation of the branches")
    return TriodPattern(tuple((mapping[b], r) for b, r in pattern.steps))


def one_third_flip(pattern: TriodPattern, j: int) -> TriodPattern:
    if j not in (1, 2):
        raise ValueError("a 1/3-flip shifts branches by 1 or 2")
    return relabel(pattern, [(b + j) % 3 for b in BRANCHES])


def flip_related(a: TriodPattern, b: TriodPattern) -> bool:
    return any(one_third_flip(a, j) == b for j in (1, 2))


def inner_ring_map(pattern: TriodPattern) -> dict[int, int]:
    """Branch of the image of each occupied branch's rank-1 point."""
    return {b: pattern.image((b, 1))[0] for b in BRANCHES if pattern.counts[b] > 0}


def inner_ring_relabeling(pattern: TriodPattern) -> tuple[int, int, int]:
    """Branch permutation under which the rank-1 points map ``b_i -> b_{i+1}``.

    Rotating labels cannot reverse the direction of the ring, so a ring
    running ``b_i -> b_{i-1}`` is fixed by the reflection ``b -> -b``.
    """
    if degrees_of_freedom(pattern) != 3:
        raise NoInnerRing("an inner ring needs points on all three branches")
    ring = inner_ring_map(pattern)
    if all(ring[b] == (b + 1) % 3 for b in BRANCHES):
        return (0, 1, 2)
    if all(ring[b] == (b - 1) % 3 for b in BRANCHES):
        return (0, 2, 1)
    raise NoInnerRing(f"rank-1 points map {ring}, not cyclically around the branches")


def normalize_branch_order(pattern: TriodPattern) -> TriodPattern:
    return relabel(pattern, inner_ring_relabeling(pattern))


def has_inner_ring(pattern: TriodPattern) -> bool:
    try:
        inner_ring_relabeling(pattern)
    except NoInnerRing:
        return False
    return True


# Sharkovsky order. math.inf stands for 2^infinity.
TWO_INFINITY = math.inf

SharkovskyDegree = Union[int, float]


def _sharpness(m: SharkovskyDegree) -> tuple[int, int, int]:
    if m == TWO_INFINITY:
        return (1, 0, 0)
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"{m!r} is not a positive integer or 2^inf")
    a = (m & -m).bit_length() - 1
    odd = m >> a
    if odd == 1:
        return (0, a, 0)
    return (2, -a, -odd)


def sharkovsky_leq(m: SharkovskyDegree, n: SharkovskyDegree) -> bool:
    """True iff ``n`` belongs to ``Sh(m)``, i.e. period ``m`` forces period ``n``."""
    return _sharpness(m) >= _sharpness(n)


def sharpest(degrees: Iterable[SharkovskyDegree]) -> SharkovskyDegree | None:
    best = None
    for d in degrees:
        if best is None or _sharpness(d) > _sharpness(best):
            best = d
    return best
