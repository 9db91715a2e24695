from __future__ import annotations

import pytest
from hypothesis import strategies as st

from triodrot.core import TriodPattern
from triodrot.generator import S0, generate_high, generate_low

P7_STEPS = ((0, 3), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2))
P5_STEPS = ((0, 2), (2, 1), (0, 1), (1, 1), (2, 2))


@pytest.fixture
def s0() -> TriodPattern:
    return S0


@pytest.fixture
def p7() -> TriodPattern:
    return generate_low(2, 7, 0)


@pytest.fixture
def p5() -> TriodPattern:
    return generate_high(2, 5, 0)


@st.composite
def patterns(draw, min_period: int = 1, max_period: int = 8, df3: bool = False):
    q = draw(st.integers(min_value=max(min_period, 3 if df3 else 1), max_value=max_period))
    lo = 1 if df3 else 0
    k0 = draw(st.integers(min_value=lo, max_value=q - 2 * lo))
    k1 = draw(st.integers(min_value=lo, max_value=q - k0 - lo))
    counts = (k0, k1, q - k0 - k1)
    placements = [(b, r) for b in range(3) for r in range(1, counts[b] + 1)]
    order = draw(st.permutations(placements))
    return TriodPattern(tuple(order))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
