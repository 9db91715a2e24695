"""Brute-force ground truth for small periods.

:func:`twist_oracle` decides twist-ness the slow way, by looking for a
forced cycle of the same rotation number with a different pattern. It is a
semi-decision bounded by the loop length searched.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .core import (
    BRANCHES,
    TriodPattern,
    degrees_of_freedom,
    has_inner_ring,
    normalize_branch_order,
    rotation_pair,
)
from .errors import BudgetExceeded
from .forcing import DEFAULT_LOOP_BUDGET, ForcedCycle, candidate_loops, extract_cycle
from .graphs import interval_graph
from .plinear import build, modality
from .trp import write_trp
from .twist import CUMULATIVE, NOT_TWIST, TWIST, TwistVerdict, chi, color_table, is_twist

log = logging.getLogger(__name__)

TWIST_CONSISTENT = "TwistConsistent"
ORACLE_NOT_TWIST = "NotTwist"
INCONCLUSIVE = "Inconclusive"


def occupancies(q: int, df_filter: Iterable[int]) -> Iterator[tuple[int, int, int]]:
    wanted = set(df_filter)
    for k0 in range(q + 1):
        for k1 in range(q - k0 + 1):
            counts = (k0, k1, q - k0 - k1)
            if sum(1 for c in counts if c) in wanted:
                yield counts


def enumerate_patterns(q: int, df_filter: Iterable[int] = (1, 2, 3)) -> Iterator[TriodPattern]:
    """Every pattern of period ``q`` with occupied-branch count in ``df_filter``.

    Each pattern is listed once, in canonical form: the orbit starts at its
    least placement and the remaining placements run over all orders.
    """
    if q < 1:
        return
    for counts in occupancies(q, tuple(df_filter)):
        placements = [(b, r) for b in BRANCHES for r in range(1, counts[b] + 1)]
        first, rest = placements[0], placements[1:]
        for order in itertools.permutations(rest):
            yield TriodPattern((first,) + order)


def census_patterns(q: int) -> Iterator[TriodPattern]:
    """Three-branch patterns whose rank-1 points already map ``b -> b+1``."""
    for P in enumerate_patterns(q, (3,)):
        if has_inner_ring(P) and normalize_branch_order(P) == P:
            yield P


@dataclass(frozen=True)
class OracleVerdict:
    kind: str
    loop_bound: int
    witness: ForcedCycle | None = None

    def __str__(self) -> str:
        if self.witness is None:
            return self.kind
        return f"{self.kind}({self.witness.rotation} {self.witness.pattern.inline()})"


def twist_oracle(
    pattern: TriodPattern, loop_bound: int | None = None, budget: int | None = DEFAULT_LOOP_BUDGET
) -> OracleVerdict:
    """Search loops up to ``loop_bound`` for a different forced pattern of equal rotation number."""
    P = normalize_branch_order(pattern)
    loop_bound = loop_bound or 3 * P.period
    rho = rotation_pair(P).rho
    fmap = build(P)
    graph = interval_graph(fmap)
    try:
        for loop in candidate_loops(graph, loop_bound, rho, budget):
            found = extract_cycle(fmap, loop)
            if isinstance(found, ForcedCycle) and found.pattern != P:
                return OracleVerdict(ORACLE_NOT_TWIST, loop_bound, found)
    except BudgetExceeded:
        return OracleVerdict(INCONCLUSIVE, loop_bound)
    return OracleVerdict(TWIST_CONSISTENT, loop_bound)


def agree(verdict: TwistVerdict, oracle: OracleVerdict) -> bool | None:
    """``None`` when the oracle was inconclusive."""
    if oracle.kind == INCONCLUSIVE:
        return None
    return (verdict.kind == TWIST) == (oracle.kind == TWIST_CONSISTENT)


@dataclass(frozen=True)
class CensusRow:
    pattern: TriodPattern
    verdict: TwistVerdict
    oracle: OracleVerdict

    @property
    def agrees(self) -> bool | None:
        return agree(self.verdict, self.oracle)

    def csv_fields(self) -> list[str]:
        P = self.pattern
        rp = rotation_pair(P)
        counts = color_table(P).counts()
        return [
            P.inline(),
            str(rp.p),
            str(rp.q),
            str(degrees_of_freedom(P)),
            f"g{counts['green']}b{counts['black']}r{counts['red']}",
            str(modality(build(P))),
            str(self.verdict),
            self.oracle.kind,
            str(chi(P, variant=CUMULATIVE)),
        ]


CSV_COLUMNS = ("canonical_trp", "p", "q", "df", "colors", "modality", "is_twist", "oracle", "chi_cumulative")


@dataclass
class CensusReport:
    period: int
    loop_bound: int
    rows: list[CensusRow] = field(default_factory=list)

    @property
    def agreements(self) -> list[CensusRow]:
        return [r for r in self.rows if r.agrees is True]

    @property
    def disagreements(self) -> list[CensusRow]:
        return [r for r in self.rows if r.agrees is False]

    @property
    def inconclusive(self) -> list[CensusRow]:
        return [r for r in self.rows if r.agrees is None]

    def twists(self) -> list[TriodPattern]:
        return [r.pattern for r in self.rows if r.verdict.kind == TWIST]

    def summary(self) -> str:
        return (
            f"period {self.period}, loop bound {self.loop_bound}: {len(self.rows)} patterns, "
            f"{len(self.agreements)} agree, {len(self.disagreements)} disagree, "
            f"{len(self.inconclusive)} inconclusive"
        )

    def write_csv(self, path: str | Path) -> None:
        lines = [",".join(CSV_COLUMNS)]
        for row in self.rows:
            lines.append(",".join(f'"{f}"' if "," in f else f for f in row.csv_fields()))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def differential_census(
    q: int,
    loop_bound: int | None = None,
    repro_dir: str | Path | None = None,
    budget: int | None = DEFAULT_LOOP_BUDGET,
) -> CensusReport:
    loop_bound = loop_bound or 3 * q
    report = CensusReport(q, loop_bound)
    for P in census_patterns(q):
        row = CensusRow(P, is_twist(P), twist_oracle(P, loop_bound, budget))
        report.rows.append(row)
        if row.agrees is False:
            log.warning("disagreement on %s: %s vs %s", P.inline(), row.verdict, row.oracle)
            if repro_dir is not None:
                out = Path(repro_dir)
                out.mkdir(parents=True, exist_ok=True)
                name = "disagree_" + P.inline().replace(":", "-").replace(",", "_") + ".trp"
                write_trp(out / name, P, f"is_twist={row.verdict} oracle={row.oracle}")
    return report

