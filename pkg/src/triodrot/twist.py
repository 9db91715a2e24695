"""Colors, states, countries, phase functions and the twist test.

A point is green, black or red as its image lies on the same branch, the
next branch or the one after. The phase of the orbit point reached after
``k`` steps from a base point is ``k*rho`` minus the displacement gathered
on the way (the *cumulative* variant). The *literal* variant subtracts
that displacement only when it is a whole number.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    THIRD,
    Placement,
    TriodPattern,
    branch_shift,
    degrees_of_freedom,
    inner_ring_relabeling,
    normalize_branch_order,
    relabel,
    rotation_pair,
)
from .errors import NoInnerRing, NotATwist
from .graphs import point_graph
from .plinear import build, modality

log = logging.getLogger(__name__)

GREEN = "green"
BLACK = "black"
RED = "red"
COLORS = (GREEN, BLACK, RED)

IN_BOUND = "in"
OUT_BOUND = "out"

CUMULATIVE = "cumulative"
LITERAL = "literal"
VARIANTS = (CUMULATIVE, LITERAL)


@dataclass(frozen=True)
class ColorTable:
    pattern: TriodPattern
    colors: tuple[str, ...]
    # IN_BOUND / OUT_BOUND for green steps, None otherwise
    bounds: tuple[str | None, ...]

    def color_of(self, placement: Placement) -> str:
        return self.colors[self.pattern.step_of[placement]]

    def count(self, color: str) -> int:
        return self.colors.count(color)

    def counts(self) -> dict[str, int]:
        return {c: self.count(c) for c in COLORS}

    def outbound_green(self) -> list[Placement]:
        return [self.pattern.steps[k] for k, b in enumerate(self.bounds) if b == OUT_BOUND]


def color_table(pattern: TriodPattern) -> ColorTable:
    colors, bounds = [], []
    for k, (b, r) in enumerate(pattern.steps):
        nb, nr = pattern.steps[(k + 1) % pattern.period]
        colors.append(COLORS[branch_shift(b, nb)])
        bounds.append((IN_BOUND if nr < r else OUT_BOUND) if nb == b else None)
    return ColorTable(pattern, tuple(colors), tuple(bounds))


@dataclass(frozen=True)
class State:
    color: str
    branch: int
    ranks: tuple[int, ...]  # innermost first

    @property
    def members(self) -> tuple[Placement, ...]:
        return tuple((self.branch, r) for r in self.ranks)

    @property
    def innermost(self) -> Placement:
        return (self.branch, self.ranks[0])

    @property
    def outermost(self) -> Placement:
        return (self.branch, self.ranks[-1])


def states(pattern: TriodPattern) -> list[State]:
    table = color_table(pattern)
    found: list[State] = []
    for b in range(3):
        run: list[int] = []
        color = None
        for r in range(1, pattern.counts[b] + 1):
            c = table.color_of((b, r))
            if c != color and run:
                found.append(State(color, b, tuple(run)))
                run = []
            color = c
            run.append(r)
        if run:
            found.append(State(color, b, tuple(run)))
    return found


@dataclass(frozen=True)
class Country:
    states: tuple[State, ...]
    points: tuple[Placement, ...]
    innermost: Placement
    kappa: Placement
    lam: Placement
    # index of the successor country in the decomposition, if any
    successor: int | None = None


def _inner_key(pl: Placement) -> tuple[int, int]:
    return (pl[1], pl[0])


def countries(pattern: TriodPattern) -> list[Country]:
    """Green points grouped by states and green paths of the point graph."""
    table = color_table(pattern)
    green_states = [s for s in states(pattern) if s.color == GREEN]
    if not green_states:
        return []
    parent = {pl: pl for s in green_states for pl in s.members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for s in green_states:
        for pl in s.members[1:]:
            union(s.members[0], pl)
    graph = point_graph(build(pattern))
    for x in parent:
        for y in graph.successors[x]:
            if y in parent:
                union(x, y)

    groups: dict[Placement, list[State]] = {}
    for s in green_states:
        groups.setdefault(find(s.members[0]), []).append(s)
    raw = []
    for members in groups.values():
        points = tuple(sorted(pl for s in members for pl in s.members))
        inner = min(points, key=_inner_key)
        kappa = pattern.image(inner)
        raw.append((tuple(members), points, inner, kappa, pattern.image(kappa)))
    raw.sort(key=lambda c: _inner_key(c[2]))

    where = {pl: i for i, c in enumerate(raw) for pl in c[1]}
    result = []
    for members, points, inner, kappa, lam in raw:
        if table.color_of(lam) == GREEN:
            succ = where[lam]
        else:
            # innermost country having a point at or beyond lam on lam's branch
            beyond = [
                i for i, c in enumerate(raw) if any(b == lam[0] and r >= lam[1] for b, r in c[1])
            ]
            succ = min(beyond, key=lambda i: _inner_key(raw[i][2])) if beyond else None
        result.append(Country(members, points, inner, kappa, lam, succ))
    return result


@dataclass(frozen=True)
class PhaseTable:
    pattern: TriodPattern
    variant: str
    base: int
    values: tuple[Fraction, ...]  # indexed by orbit step
    # displacement accumulated from the base to each step
    accumulated: tuple[Fraction, ...]

    def of(self, placement: Placement) -> Fraction:
        return self.values[self.pattern.step_of[placement]]


def phase_table(pattern: TriodPattern, variant: str = CUMULATIVE, base: int = 0) -> PhaseTable:
    if variant not in VARIANTS:
        raise ValueError(f"unknown phase variant {variant!r}")
    q = pattern.period
    rho = rotation_pair(pattern).rho
    disp = pattern.displacements()
    values = [Fraction(0)] * q
    acc = [Fraction(0)] * q
    total = Fraction(0)
    for i in range(q):
        k = (base + i) % q
        acc[k] = total
        if variant == CUMULATIVE or total.denominator == 1:
            values[k] = i * rho - total
        else:
            values[k] = i * rho
        total += disp[k]
    return PhaseTable(pattern, variant, base % q, tuple(values), tuple(acc))


def chi(
    pattern: TriodPattern,
    subset: Iterable[Placement] | None = None,
    variant: str = CUMULATIVE,
    phases: PhaseTable | None = None,
) -> Fraction:
    """Spread ``max psi - min psi`` over ``subset`` (default: the whole pattern)."""
    phases = phases or phase_table(pattern, variant)
    pts = list(pattern.steps if subset is None else subset)
    if not pts:
        raise ValueError("chi of an empty set")
    vals = [phases.of(pl) for pl in pts]
    return max(vals) - min(vals)


@dataclass(frozen=True)
class Check:
    ok: bool
    # for a failure: the offending pair of placements (outer point first)
    witness: tuple[Placement, Placement] | None = None


def _same_branch_pairs(pattern: TriodPattern):
    for b in range(3):
        for r_in in range(1, pattern.counts[b] + 1):
            for r_out in range(r_in + 1, pattern.counts[b] + 1):
                yield (b, r_out), (b, r_in)


def is_order_invariant(pattern: TriodPattern) -> Check:
    for x, y in _same_branch_pairs(pattern):
        fx, fy = pattern.image(x), pattern.image(y)
        if fx[0] == fy[0] and fx[1] < fy[1]:
            return Check(False, (x, y))
    return Check(True)


def has_strict_phase(pattern: TriodPattern) -> Check:
    """Phase strictly monotone along each branch, in the direction set by rho."""
    rho = rotation_pair(pattern).rho
    phases = phase_table(pattern, CUMULATIVE)
    for x, y in _same_branch_pairs(pattern):
        px, py = phases.of(x), phases.of(y)
        if not (px < py if rho <= THIRD else px > py):
            return Check(False, (x, y))
    return Check(True)


TWIST = "Twist"
NOT_TWIST = "NotTwist"
NOT_APPLICABLE = "NotApplicable"

# reasons attached to a negative verdict
NO_INNER_RING = "NoInnerRing"
NON_COPRIME = "NonCoprime"
OUTBOUND_GREEN = "OutboundGreen"
RED_BELOW_THIRD = "RedBelowThird"
GREEN_ABOVE_THIRD = "GreenAboveThird"
NOT_ORDER_INVARIANT = "NotOrderInvariant"
PHASE_NOT_STRICT = "PhaseNotStrict"


@dataclass(frozen=True)
class TwistVerdict:
    kind: str
    reason: str | None = None
    witness: tuple | None = None
    # the pattern with its inner ring running b0 -> b1 -> b2, when defined
    normalized: TriodPattern | None = None

    @property
    def is_twist(self) -> bool:
        return self.kind == TWIST

    def __str__(self) -> str:
        if self.reason is None:
            return self.kind
        return f"{self.kind}({self.reason})"


def is_twist(pattern: TriodPattern) -> TwistVerdict:
    if degrees_of_freedom(pattern) != 3:
        return TwistVerdict(NOT_APPLICABLE, "df<3")
    try:
        norm = relabel(pattern, inner_ring_relabeling(pattern))
    except NoInnerRing as exc:
        return TwistVerdict(NOT_TWIST, NO_INNER_RING, (str(exc),))
    rp = rotation_pair(norm)
    if not rp.coprime:
        return TwistVerdict(NOT_TWIST, NON_COPRIME, (rp.p, rp.q), norm)
    table = color_table(norm)
    out = table.outbound_green()
    if out:
        return TwistVerdict(NOT_TWIST, OUTBOUND_GREEN, (out[0],), norm)
    rho = rp.rho
    if rho < THIRD and table.count(RED):
        red = norm.steps[table.colors.index(RED)]
        return TwistVerdict(NOT_TWIST, RED_BELOW_THIRD, (red,), norm)
    if rho > THIRD and table.count(GREEN):
        green = norm.steps[table.colors.index(GREEN)]
        return TwistVerdict(NOT_TWIST, GREEN_ABOVE_THIRD, (green,), norm)
    order = is_order_invariant(norm)
    if not order.ok:
        return TwistVerdict(NOT_TWIST, NOT_ORDER_INVARIANT, order.witness, norm)
    phase = has_strict_phase(norm)
    if not phase.ok:
        return TwistVerdict(NOT_TWIST, PHASE_NOT_STRICT, phase.witness, norm)
    return TwistVerdict(TWIST, None, None, norm)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: Fraction | None  # None when the bound has nothing to measure
    bound: Fraction
    ok: bool
    # gated bounds are expected to hold for every twist; the others are
    # diagnostics reported without being enforced
    gated: bool = True


@dataclass
class ChiReport:
    pattern: TriodPattern
    rho: Fraction
    modality: int
    chi_cumulative: Fraction
    chi_literal: Fraction
    checks: list[BoundCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.gated)

    def failures(self) -> list[BoundCheck]:
        return [c for c in self.checks if not c.ok]


def _spread(vals: Sequence[Fraction]) -> Fraction:
    return max(vals) - min(vals)


def _worst(name: str, values: list[Fraction], bound: Fraction, gated: bool = True) -> BoundCheck:
    if not values:
        return BoundCheck(name, None, bound, True, gated)
    worst = max(values)
    return BoundCheck(name, worst, bound, worst <= bound, gated)


def _low_checks(P: TriodPattern, psi: PhaseTable, rho: Fraction, m: int) -> list[BoundCheck]:
    table = color_table(P)
    st = states(P)
    cs = countries(P)
    greens = [pl for pl in P.steps if table.color_of(pl) == GREEN]
    blacks = [pl for pl in P.steps if table.color_of(pl) == BLACK]
    val = psi.of
    out = [
        _worst(
            "green_state",
            [_spread([val(pl) for pl in s.members]) for s in st if s.color == GREEN],
            1 - 3 * rho,
        ),
    ]
    per_country = []
    for c in cs:
        bound = len(c.states) * (1 - 2 * rho) - rho
        per_country.append(_spread([val(pl) for pl in c.points]) - bound)
    out.append(_worst("country (excess over m_s(1-2rho)-rho)", per_country, Fraction(0), gated=False))

    # consecutive countries along a branch, ordered by their innermost point there
    adjacent = []
    for b in range(3):
        on_b = sorted(
            (min(r for bb, r in c.points if bb == b), i)
            for i, c in enumerate(cs)
            if any(bb == b for bb, _ in c.points)
        )
        for (_, inner_i), (_, outer_i) in zip(on_b, on_b[1:]):
            adjacent.append(
                min(val(x) - val(y) for x in cs[outer_i].points for y in cs[inner_i].points)
            )
    out.append(_worst("adjacent_countries", adjacent, 4 * rho - 1, gated=False))

    next_branch = []
    innermost_on = {}
    for i, c in enumerate(cs):
        for b, r in c.points:
            if b not in innermost_on or r < innermost_on[b][0]:
                innermost_on[b] = (r, i)
    for b, (_, i) in innermost_on.items():
        nb = (b + 1) % 3
        if nb in innermost_on:
            j = innermost_on[nb][1]
            next_branch.append(min(val(x) - val(y) for x in cs[i].points for y in cs[j].points))
    out.append(_worst("next_branch_countries", next_branch, 2 * rho - THIRD, gated=False))

    if greens:
        out.append(
            _worst(
                "all_green",
                [_spread([val(pl) for pl in greens])],
                Fraction(2 * len(cs) + 1, 3) - 2 * rho,
                gated=False,
            )
        )
        out.append(
            _worst("black_to_green", [val(x) - max(val(z) for z in greens) for x in blacks], rho, gated=False)
        )
        out.append(
            _worst(
                "green_to_black",
                [min(val(z) for z in greens) - val(x) for x in blacks],
                rho - THIRD,
                gated=False,
            )
        )
    total = chi(P, phases=psi)
    out.append(BoundCheck("chi_total", total, Fraction(m + 2), total <= m + 2))
    return out


def _high_checks(P: TriodPattern, psi: PhaseTable, rho: Fraction, m: int) -> list[BoundCheck]:
    st = states(P)
    val = psi.of
    out = [
        _worst(
            "red_state",
            [_spread([val(pl) for pl in s.members]) for s in st if s.color == RED],
            3 * rho - 1,
        )
    ]
    adjacent = []
    for b in range(3):
        reds = [s for s in st if s.branch == b and s.color == RED]
        for inner, outer in zip(reds, reds[1:]):
            adjacent.append(min(abs(val(x) - val(y)) for x in outer.members for y in inner.members))
    out.append(_worst("adjacent_red_states", adjacent, 3 * rho - 1, gated=False))
    no_red = [
        _spread([val((b, r)) for r in range(1, P.counts[b] + 1)])
        for b in range(3)
        if P.counts[b] and not any(s.branch == b and s.color == RED for s in st)
    ]
    out.append(_worst("branch_without_red", no_red, 3 * rho - 1, gated=False))
    total = chi(P, phases=psi)
    out.append(BoundCheck("chi_total", total, Fraction(m), total <= m))
    return out


def verify_chi_bounds(pattern: TriodPattern, require_twist: bool = True) -> ChiReport:
    """Evaluate the phase-spread bounds that apply to the pattern's rotation regime."""
    if require_twist:
        verdict = is_twist(pattern)
        if not verdict.is_twist:
            raise NotATwist(f"pattern is {verdict}")
        P = verdict.normalized
    else:
        try:
            P = normalize_branch_order(pattern)
        except NoInnerRing:
            P = pattern
    rho = rotation_pair(P).rho
    m = modality(build(P))
    psi = phase_table(P, CUMULATIVE)
    report = ChiReport(P, rho, m, chi(P, phases=psi), chi(P, variant=LITERAL))
    if rho < THIRD:
        report.checks = _low_checks(P, psi, rho, m)
    elif rho > THIRD:
        report.checks = _high_checks(P, psi, rho, m)
    else:
        report.checks = [BoundCheck("chi_total", report.chi_cumulative, Fraction(m + 2), report.chi_cumulative <= m + 2)]
    for c in report.checks:
        if not c.ok:
            level = logging.WARNING if c.gated else logging.INFO
            log.log(level, "bound %s exceeded on %s: %s > %s", c.name, P.inline(), c.value, c.bound)
    return report


def black_trains(pattern: TriodPattern) -> list[tuple[Placement, ...]]:
    """Maximal orbit segments of consecutive black points (diagnostic only)."""
    table = color_table(pattern)
    q = pattern.period
    if all(c == BLACK for c in table.colors):
        return [pattern.steps]
    start = next(k for k in range(q) if table.colors[k] != BLACK)
    trains, run = [], []
    for i in range(1, q + 1):
        k = (start + i) % q
        if table.colors[k] == BLACK:
            run.append(pattern.steps[k])
        elif run:
            trains.append(tuple(run))
            run = []
    if run:
        trains.append(tuple(run))
    return trains
