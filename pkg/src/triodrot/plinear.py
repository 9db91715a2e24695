"""The P-linear map of a pattern.

Pattern points sit at integer distances equal to their ranks. The map
fixes the branching point, sends each pattern point to its successor and
is affine (by arclength) on every basic interval, so a basic interval whose
endpoint images lie on different branches is folded through 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .core import BRANCHES, CENTER, TriodPattern, TriodPoint
from .errors import OutsideHull


@dataclass(frozen=True, order=True)
class BasicInterval:
    branch: int
    lo: Fraction
    hi: Fraction

    @property
    def rank(self) -> int:
        """Rank of the pattern point at the outer end."""
        return int(self.hi)

    def contains(self, x: TriodPoint) -> bool:
        if x.is_center:
            return self.lo == 0
        return x.branch == self.branch and self.lo <= x.dist <= self.hi

    def label(self) -> str:
        return f"b{self.branch}[{self.lo},{self.hi}]"

    def __str__(self) -> str:
        return self.label()


# (branch, dist at start, dist at end, arclength offset of the start)
Segment = tuple[int, Fraction, Fraction, Fraction]


def _segments(a: TriodPoint, b: TriodPoint) -> list[Segment]:
    zero = Fraction(0)
    if a.is_center:
        return [(b.branch, zero, b.dist, zero)]
    if b.is_center:
        return [(a.branch, a.dist, zero, zero)]
    if a.branch == b.branch:
        return [(a.branch, a.dist, b.dist, zero)]
    return [(a.branch, a.dist, zero, zero), (b.branch, zero, b.dist, a.dist)]


def path_length(a: TriodPoint, b: TriodPoint) -> Fraction:
    return sum((abs(e - s) for _, s, e, _ in _segments(a, b)), Fraction(0))


def point_along(a: TriodPoint, b: TriodPoint, u: Fraction) -> TriodPoint:
    """Point at arclength ``u`` along the tree path from ``a`` to ``b``."""
    for branch, start, end, off in _segments(a, b):
        seg = abs(end - start)
        if u <= off + seg:
            step = u - off
            dist = start + step if end >= start else start - step
            return TriodPoint.at(branch, dist)
    raise ValueError("arclength beyond the end of the path")


def _direction(v: TriodPoint, w: TriodPoint) -> str:
    if w.branch == v.branch and w.dist > v.dist:
        return "out"
    return "in"


@dataclass(frozen=True)
class PLinearMap:
    pattern: TriodPattern

    @cached_property
    def hull(self) -> tuple[int, int, int]:
        return self.pattern.counts

    @cached_property
    def intervals(self) -> tuple[BasicInterval, ...]:
        return tuple(
            BasicInterval(b, Fraction(r - 1), Fraction(r))
            for b in BRANCHES
            for r in range(1, self.hull[b] + 1)
        )

    @cached_property
    def _images(self) -> dict[BasicInterval, tuple[TriodPoint, TriodPoint]]:
        return {I: (self.image_at(I.branch, I.lo), self.image_at(I.branch, I.hi)) for I in self.intervals}

    def coords(self, placement) -> TriodPoint:
        b, r = placement
        return TriodPoint(b, Fraction(r))

    def image_at(self, branch: int, rank) -> TriodPoint:
        """Image of the pattern point of given rank (rank 0 is the branching point)."""
        if rank == 0:
            return CENTER
        b, r = self.pattern.image((branch, int(rank)))
        return TriodPoint(b, Fraction(r))

    def endpoint_images(self, interval: BasicInterval) -> tuple[TriodPoint, TriodPoint]:
        return self._images[interval]

    def interval_at(self, x: TriodPoint) -> BasicInterval:
        """The basic interval containing ``x`` (the inner one at a pattern point)."""
        if x.is_center:
            raise ValueError("the branching point lies in several basic intervals")
        if x.dist > self.hull[x.branch]:
            raise OutsideHull(f"{x} lies outside the hull of the pattern")
        r = math.ceil(x.dist)
        return BasicInterval(x.branch, Fraction(r - 1), Fraction(r))

    def evaluate(self, x: TriodPoint) -> TriodPoint:
        if x.is_center:
            return CENTER
        interval = self.interval_at(x)
        a, b = self._images[interval]
        s = x.dist - interval.lo
        return point_along(a, b, s * path_length(a, b))

    def image_range(self, interval: BasicInterval, branch: int) -> tuple[Fraction, Fraction] | None:
        """Distance range covered on ``branch`` by the image of ``interval``."""
        a, b = self._images[interval]
        for seg_branch, start, end, _ in _segments(a, b):
            if seg_branch == branch:
                return (min(start, end), max(start, end))
        return None

    def covers(self, src: BasicInterval, dst: BasicInterval) -> bool:
        span = self.image_range(src, dst.branch)
        return span is not None and span[0] <= dst.lo and dst.hi <= span[1]

    def pullback(
        self, interval: BasicInterval, branch: int, lo: Fraction, hi: Fraction
    ) -> tuple[Fraction, Fraction] | None:
        """Distances in ``interval`` mapped into ``[lo, hi]`` on ``branch``.

        Returns ``None`` unless the preimage has non-empty interior.
        """
        a, b = self._images[interval]
        total = path_length(a, b)
        for seg_branch, start, end, off in _segments(a, b):
            if seg_branch != branch:
                continue
            c = max(lo, min(start, end))
            d = min(hi, max(start, end))
            if c >= d:
                return None
            u1 = off + abs(c - start)
            u2 = off + abs(d - start)
            t1 = interval.lo + u1 / total
            t2 = interval.lo + u2 / total
            return (min(t1, t2), max(t1, t2))
        return None


def build(pattern: TriodPattern) -> PLinearMap:
    return PLinearMap(pattern)


def evaluate(fmap: PLinearMap, x: TriodPoint) -> TriodPoint:
    return fmap.evaluate(x)


def preimages_of_zero(fmap: PLinearMap) -> list[TriodPoint]:
    found = [CENTER]
    for interval in fmap.intervals:
        a, b = fmap.endpoint_images(interval)
        if a.is_center or b.is_center or a.branch == b.branch:
            continue
        t = interval.lo + a.dist / (a.dist + b.dist)
        found.append(TriodPoint(interval.branch, t))
    return found


def fold_points(fmap: PLinearMap) -> list[TriodPoint]:
    """Interior pattern points where the map turns back on itself."""
    folds = []
    for b in BRANCHES:
        for r in range(1, fmap.hull[b]):
            fx = fmap.image_at(b, r)
            back = fmap.image_at(b, r - 1)
            ahead = fmap.image_at(b, r + 1)
            if _direction(fx, back) == _direction(fx, ahead):
                folds.append(TriodPoint(b, Fraction(r)))
    return folds


def center_germs(fmap: PLinearMap) -> dict[int, int]:
    """Branch entered by the image of each occupied branch near 0."""
    return {b: fmap.image_at(b, 1).branch for b in BRANCHES if fmap.hull[b] > 0}


def modality(fmap: PLinearMap) -> int:
    """Number of laps of the P-linear map.

    Each occupied branch contributes one lap plus one per fold. The
    innermost laps meet at 0; those whose germs go to different branches
    join into one monotone piece, so the laps through 0 number as many as
    the largest group of germs sharing a target branch.
    """
    per_branch = sum(1 for b in BRANCHES if fmap.hull[b] > 0) + len(fold_points(fmap))
    targets = list(center_germs(fmap).values())
    through_center = max(targets.count(t) for t in set(targets))
    return per_branch - len(targets) + through_center
