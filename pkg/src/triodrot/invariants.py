"""Per-pattern invariant suite behind the ``verify`` command."""

from __future__ import annotations

from dataclasses import dataclass

from .conjugacy import conjugacy
from .core import (
    THIRD,
    TriodPattern,
    canonical_form,
    has_inner_ring,
    normalize_branch_order,
    one_third_flip,
    rotation_pair,
)
from .forcing import extract_cycle, forced_patterns, fundamental_loop
from .graphs import cycle_mean_extremes, interval_graph, point_graph
from .oracle import ORACLE_NOT_TWIST, twist_oracle
from .plinear import build, modality, preimages_of_zero
from .trp import emit_trp, parse_trp
from .twist import GREEN, RED, color_table, is_twist, phase_table, verify_chi_bounds

# the loop count grows exponentially with the period; past this the
# containment check costs minutes and adds nothing the graph bound misses
FORCED_CHECK_PERIOD = 12


@dataclass(frozen=True)
class Finding:
    name: str
    ok: bool
    detail: str = ""
    # informational findings are printed but never fail the suite
    informational: bool = False


def run_suite(pattern: TriodPattern, oracle_bound: int | None = None) -> list[Finding]:
    P = pattern
    q = P.period
    found: list[Finding] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        found.append(Finding(name, bool(ok), detail))

    rp = rotation_pair(P)
    check("rotation pair is integral", sum(P.displacements()).denominator == 1, str(rp))
    check("canonical form is idempotent", canonical_form(canonical_form(P)).steps == canonical_form(P).steps)
    check("trp round trip", parse_trp(emit_trp(canonical_form(P))) == P)
    flips = [one_third_flip(P, j) for j in (1, 2)]
    check("rotation pair invariant under 1/3-flips", all(rotation_pair(F) == rp for F in flips))
    verdict = is_twist(P)
    check(
        "twist verdict invariant under 1/3-flips and reindexing",
        all(is_twist(F).kind == verdict.kind for F in flips + [P.reindexed(1)]),
        str(verdict),
    )
    if rp.rho == THIRD:
        table = color_table(P)
        check("#red = #green at rotation number 1/3", table.count(RED) == table.count(GREEN))

    fmap = build(P)
    check(
        "map sends each point to its successor",
        all(fmap.evaluate(P.point(k)) == P.point(k + 1) for k in range(q)),
    )
    check("fundamental point loop present", all(point_graph(fmap).has_edge(P.steps[k], P.steps[(k + 1) % q]) for k in range(q)))
    loop = fundamental_loop(fmap)
    cycle = extract_cycle(fmap, loop)
    check("fundamental loop reproduces the pattern", getattr(cycle, "pattern", None) == P, f"loop length {loop.length}")
    lo, hi = cycle_mean_extremes(interval_graph(fmap))
    check("rotation number inside the rotation interval", lo <= rp.rho <= hi, f"[{lo}, {hi}]")
    reach = min(q, FORCED_CHECK_PERIOD)
    forced = forced_patterns(fmap, reach)
    check(
        "forced patterns stay inside the rotation interval",
        all(lo <= c.rotation.rho <= hi for c in forced.cycles.values()),
        f"{len(forced)} patterns up to period {reach}" + (" (partial)" if forced.partial else ""),
    )
    psi = [phase_table(P, base=b).values for b in range(q)]
    diffs = {tuple(v[k] - v[0] for k in range(q)) for v in psi}
    check("phase differences independent of the base", len(diffs) == 1)
    m = modality(fmap)
    zeros = len(preimages_of_zero(fmap))
    found.append(Finding("modality vs preimages of 0", m == zeros, f"{m} vs {zeros}", informational=not verdict.is_twist))

    if verdict.is_twist:
        report = verify_chi_bounds(P)
        failed = [c.name for c in report.checks if c.gated and not c.ok]
        check("phase spread bounds", report.ok, ", ".join(failed))
        table = conjugacy(P)
        check("conjugacy with the rotation", table.semiconjugacy_holds() and table.theta_is_rotation_orbit())
        check("monotone pieces within modality + 2", table.ok, f"{table.pieces} <= {table.bound}")
        bound = oracle_bound or 2 * q
        oracle = twist_oracle(P, bound)
        check("no other forced pattern of the same rotation number", oracle.kind != ORACLE_NOT_TWIST, str(oracle))
    elif has_inner_ring(P):
        # read the rotation pair with the ring running b0 -> b1 -> b2
        N = normalize_branch_order(P)
        nrp = rotation_pair(N)
        if not nrp.coprime:
            u = nrp.rho.denominator
            reduced = forced_patterns(build(N), u, rho=nrp.rho)
            check(
                "forces the reduced rotation pair",
                any(c.rotation.q == u for c in reduced.cycles.values()),
                f"looked for period {u}",
            )
    return found


def suite_ok(findings: list[Finding]) -> bool:
    return all(f.ok or f.informational for f in findings)
