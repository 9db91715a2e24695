"""Conjugacy of a twist orbit with the rigid rotation by ``p/q``.

The phase is lifted branchwise: adding ``j/3`` on the branch ``j`` steps
after the base branch turns it into a function ``L`` with
``L(f^k(x0)) = k*rho - n_k`` for integers ``n_k``. Then ``Theta = L mod 1``
and ``Theta`` agrees with ``L`` up to a constant wherever ``floor(L)`` is
constant, so it is monotone on each run of points along a branch sharing
that integer part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import TriodPattern, branch_shift, rotation_pair
from .errors import NotATwist
from .plinear import build, modality
from .twist import CUMULATIVE, is_twist, phase_table


@dataclass(frozen=True)
class ConjugacyTable:
    pattern: TriodPattern
    rho: Fraction
    lift: tuple[Fraction, ...]  # per orbit step
    theta: tuple[Fraction, ...]  # per orbit step, in [0, 1)
    pieces: int
    bound: int  # modality + 2

    @property
    def ok(self) -> bool:
        return self.pieces <= self.bound

    def semiconjugacy_holds(self) -> bool:
        q = len(self.theta)
        return all((self.theta[k] + self.rho) % 1 == self.theta[(k + 1) % q] for k in range(q))

    def theta_is_rotation_orbit(self) -> bool:
        q = len(self.theta)
        return sorted(self.theta) == [Fraction(k, q) for k in range(q)]


def lift(pattern: TriodPattern, base: int = 0) -> tuple[Fraction, ...]:
    psi = phase_table(pattern, CUMULATIVE, base)
    home = pattern.branch(base)
    return tuple(
        v + Fraction(branch_shift(home, pattern.branch(k)), 3) for k, v in enumerate(psi.values)
    )


def count_pieces(pattern: TriodPattern, lifted) -> int:
    pieces = 0
    for b in range(3):
        floors = [math.floor(lifted[pattern.step_of[(b, r)]]) for r in range(1, pattern.counts[b] + 1)]
        pieces += sum(1 for i, f in enumerate(floors) if i == 0 or f != floors[i - 1])
    return pieces


def conjugacy(pattern: TriodPattern, require_twist: bool = True) -> ConjugacyTable:
    if require_twist:
        verdict = is_twist(pattern)
        if not verdict.is_twist:
            raise NotATwist(f"pattern is {verdict}")
        pattern = verdict.normalized
    rho = rotation_pair(pattern).rho
    lifted = lift(pattern)
    theta = tuple(v % 1 for v in lifted)
    m = modality(build(pattern))
    table = ConjugacyTable(pattern, rho, lifted, theta, count_pieces(pattern, lifted), m + 2)
    assert table.semiconjugacy_holds()
    return table
