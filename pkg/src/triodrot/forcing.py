"""Cycles forced by a pattern, read off loops of its interval graph.

Every loop of basic intervals carries a periodic orbit of the P-linear
map that follows it. :func:`extract_cycle` finds that orbit exactly: it
pulls the first interval back along the itinerary to the subinterval
``K`` on which the loop's composite map is affine, then solves the affine
fixed-point equation on ``K``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Iterable, Iterator

from .core import (
    THIRD,
    RotationPair,
    SharkovskyDegree,
    TriodPattern,
    TriodPoint,
    canonical_form,
    rotation_pair,
    sharpest,
)
from .errors import BudgetExceeded
from .graphs import (
    Loop,
    MarkovGraph,
    cycle_mean_extremes,
    enumerate_loops,
    interval_graph,
    loops_with_displacement,
    make_loop,
)
from .plinear import BasicInterval, PLinearMap, build

log = logging.getLogger(__name__)

DEFAULT_LOOP_BUDGET = 200_000


@dataclass(frozen=True)
class ForcedCycle:
    pattern: TriodPattern
    loop: Loop
    orbit: tuple[TriodPoint, ...]
    rotation: RotationPair
    # the loop's composite map is the identity; the orbit is a generic one
    degenerate: bool = False

    @property
    def period(self) -> int:
        return len(self.orbit)


@dataclass(frozen=True)
class Degenerate:
    """A loop whose only associated periodic point is the branching point."""

    loop: Loop
    reason: str


def pattern_of_orbit(orbit: Iterable[TriodPoint]) -> TriodPattern:
    orbit = list(orbit)
    ranks: dict[TriodPoint, int] = {}
    for b in (0, 1, 2):
        on_branch = sorted(x.dist for x in orbit if x.branch == b)
        for r, d in enumerate(on_branch, start=1):
            ranks[TriodPoint(b, d)] = r
    return TriodPattern(tuple((x.branch, ranks[x]) for x in orbit))


def _iterate(fmap: PLinearMap, x: TriodPoint, n: int) -> TriodPoint:
    for _ in range(n):
        x = fmap.evaluate(x)
    return x


def loop_domain(fmap: PLinearMap, loop: Loop) -> tuple[Fraction, Fraction]:
    """Subinterval of the first interval whose points follow the whole loop."""
    vs = loop.vertices
    m = len(vs)
    lo, hi = vs[0].lo, vs[0].hi
    for i in reversed(range(m)):
        span = fmap.pullback(vs[i], vs[(i + 1) % m].branch, lo, hi)
        # a covering itinerary can never refine to nothing
        assert span is not None, f"empty itinerary at step {i} of {loop}"
        lo, hi = span
    return lo, hi


def extract_cycle(fmap: PLinearMap, loop: Loop) -> ForcedCycle | Degenerate:
    vs: tuple[BasicInterval, ...] = loop.vertices
    m = len(vs)
    home = vs[0].branch
    lo, hi = loop_domain(fmap, loop)

    def coord(t: Fraction) -> Fraction:
        y = _iterate(fmap, TriodPoint.at(home, t), m)
        assert y.is_center or y.branch == home
        return y.dist

    f_lo, f_hi = coord(lo), coord(hi)
    slope = (f_hi - f_lo) / (hi - lo)
    degenerate = slope == 1
    if degenerate:
        # composite is the identity on the whole first interval: every
        # point is periodic; take one off the midpoint symmetry
        assert (lo, hi) == (vs[0].lo, vs[0].hi) and f_lo == lo
        fixed = lo + (hi - lo) / 4
    else:
        fixed = (f_lo - slope * lo) / (1 - slope)
    assert lo <= fixed <= hi
    if fixed == 0:
        return Degenerate(loop, "the loop only carries the branching point")

    x0 = TriodPoint(home, fixed)
    orbit = [x0]
    x = x0
    for i in range(1, m + 1):
        x = fmap.evaluate(x)
        assert vs[i % m].contains(x), f"orbit left the itinerary at step {i}"
        if x == x0:
            break
        orbit.append(x)
    assert x == x0 and m % len(orbit) == 0
    pattern = pattern_of_orbit(orbit)
    return ForcedCycle(canonical_form(pattern), loop, tuple(orbit), rotation_pair(pattern), degenerate)


def _adjacent_intervals(fmap: PLinearMap, step: int) -> list[BasicInterval]:
    b, r = fmap.pattern.steps[step]
    found = [BasicInterval(b, Fraction(r - 1), Fraction(r))]
    if r < fmap.hull[b]:
        found.append(BasicInterval(b, Fraction(r), Fraction(r + 1)))
    return found


def fundamental_loop(fmap: PLinearMap, graph: MarkovGraph | None = None) -> Loop:
    """Interval-graph loop shadowing the pattern's own orbit.

    Step ``k`` uses a basic interval with the ``k``-th orbit point as an
    endpoint. Goes around once when possible, otherwise twice.
    """
    graph = graph or interval_graph(fmap)
    q = fmap.pattern.period
    for laps in (1, 2):
        length = q * laps
        for start in _adjacent_intervals(fmap, 0):
            layers = [{start: None}]
            for k in range(1, length + 1):
                layer = {}
                for J in _adjacent_intervals(fmap, k % q):
                    for I in layers[-1]:
                        if graph.has_edge(I, J):
                            layer[J] = I
                            break
                layers.append(layer)
            if start in layers[-1]:
                # follow parents back from the closing copy of start
                tail = []
                node = layers[length][start]
                for k in range(length - 1, 0, -1):
                    tail.append(node)
                    node = layers[k][node]
                return make_loop(graph, [start] + tail[::-1])
    raise AssertionError("no fundamental loop found")  # pragma: no cover


@dataclass
class ForcedPatterns:
    """Patterns of cycles found on loops up to ``max_period`` edges."""

    max_period: int
    rho: Fraction | None = None
    cycles: dict[TriodPattern, ForcedCycle] = field(default_factory=dict)
    partial: bool = False

    def __contains__(self, pattern: TriodPattern) -> bool:
        return pattern in self.cycles

    def __iter__(self) -> Iterator[TriodPattern]:
        return iter(self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def pairs(self) -> set[tuple[TriodPattern, RotationPair]]:
        return {(p, c.rotation) for p, c in self.cycles.items()}

    def rotation_pairs(self) -> set[tuple[int, int]]:
        return {(c.rotation.p, c.rotation.q) for c in self.cycles.values()}

    def sorted(self) -> list[ForcedCycle]:
        return sorted(
            self.cycles.values(), key=lambda c: (c.rotation.q, c.rotation.p, c.pattern.steps)
        )


def candidate_loops(
    graph: MarkovGraph, max_len: int, rho: Fraction | None = None, budget: int | None = None
) -> Iterator[Loop]:
    """Loops of length ``<= max_len``, optionally only those of rotation number ``rho``."""
    if rho is None:
        yield from enumerate_loops(graph, max_len, budget)
        return
    produced = 0
    for n in count(rho.denominator, rho.denominator):
        if n > max_len:
            return
        thirds = n * rho * 3
        if thirds.denominator != 1:
            continue
        for loop in loops_with_displacement(graph, n, int(thirds)):
            produced += 1
            if budget is not None and produced > budget:
                raise BudgetExceeded(f"more than {budget} loops of rotation number {rho}")
            yield loop


def forced_patterns(
    fmap: PLinearMap,
    max_period: int,
    rho: Fraction | None = None,
    budget: int | None = DEFAULT_LOOP_BUDGET,
) -> ForcedPatterns:
    graph = interval_graph(fmap)
    result = ForcedPatterns(max_period, rho)
    try:
        for loop in candidate_loops(graph, max_period, rho, budget):
            found = extract_cycle(fmap, loop)
            if isinstance(found, ForcedCycle) and found.pattern not in result.cycles:
                result.cycles[found.pattern] = found
    except BudgetExceeded as exc:
        log.warning("forced pattern search truncated: %s", exc)
        result.partial = True
    return result


def primitive_forced_periods(fmap: PLinearMap) -> set[int]:
    """Periods in ``{1, 2, 3}`` of forced cycles off 0 with one point per branch."""
    periods = set()
    graph = interval_graph(fmap)
    for loop in enumerate_loops(graph, 3):
        branches = {v.branch for v in loop.vertices}
        if len(branches) != loop.length:
            continue
        found = extract_cycle(fmap, loop)
        if isinstance(found, ForcedCycle) and found.period == loop.length:
            periods.add(loop.length)
    return periods


def is_copious_prefilter(fmap: PLinearMap) -> bool:
    """Sufficient test for copiousness: two distinct primitive forced periods."""
    return len(primitive_forced_periods(fmap)) >= 2


def block_structure_over_ring(pattern: TriodPattern) -> bool:
    return all(d == THIRD for d in pattern.displacements())


@dataclass(frozen=True)
class RotationInterval:
    lo: Fraction
    hi: Fraction
    # sharpest multiplicity seen at each endpoint; a lower bound in the
    # Sharkovsky order, never a certified value
    lo_degree: SharkovskyDegree | None
    hi_degree: SharkovskyDegree | None
    max_period: int
    partial: bool

    def contains(self, rho: Fraction) -> bool:
        return self.lo <= rho <= self.hi


def _degree_at(fmap: PLinearMap, rho: Fraction, max_period: int, budget: int | None):
    found = forced_patterns(fmap, max_period, rho, budget)
    return sharpest(c.period // rho.denominator for c in found.cycles.values()), found.partial


def rotation_interval(
    fmap: PLinearMap, max_period: int | None = None, budget: int | None = DEFAULT_LOOP_BUDGET
) -> RotationInterval:
    lo, hi = cycle_mean_extremes(interval_graph(fmap))
    max_period = max_period or fmap.pattern.period
    lo_deg, lo_partial = _degree_at(fmap, lo, max_period, budget)
    if hi == lo:
        hi_deg, hi_partial = lo_deg, lo_partial
    else:
        hi_deg, hi_partial = _degree_at(fmap, hi, max_period, budget)
    return RotationInterval(lo, hi, lo_deg, hi_deg, max_period, lo_partial or hi_partial)


def forced_by(pattern: TriodPattern, max_period: int, **kwargs) -> ForcedPatterns:
    return forced_patterns(build(pattern), max_period, **kwargs)
