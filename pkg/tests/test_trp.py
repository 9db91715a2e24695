from __future__ import annotations

import pytest
from hypothesis import given

from triodrot.core import canonical_form
from triodrot.errors import InvalidPattern, ParseError
from triodrot.trp import emit_trp, parse_trp, read_trp, write_trp

from .conftest import P7_STEPS, patterns

P7_TEXT = "period 7\n0 0 3\n1 0 1\n2 1 1\n3 2 1\n4 0 2\n5 1 2\n6 2 2\n"


def test_parse_p7():
    assert parse_trp(P7_TEXT).steps == P7_STEPS


def test_comments_and_blank_lines():
    text = "# the 2/7 pattern\n\nperiod 7\n# body\n" + P7_TEXT.split("\n", 1)[1]
    assert parse_trp(text).steps == P7_STEPS


def test_duplicate_rank_is_invalid():
    with pytest.raises(InvalidPattern):
        parse_trp("period 3\n0 0 1\n1 0 1\n2 1 1\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("period 3\n0 0 1\n1 1 1\n2 2 1", 4),
        ("periodo 3\n", 1),
        ("period 2\n0 0 1\n2 1 1\n", 3),
        ("period 2\n0 0 1\n", 2),
        ("period 1\n0 0 1\n1 0 2\n", 3),
        ("period 1\n0 x 1\n", 2),
        ("period 1\n0 0 -1\n", 2),
        ("# only a comment\n", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_trp(text)
    assert info.value.line == line


def test_emit_is_bit_exact(p7):
    assert emit_trp(p7) == P7_TEXT
    assert emit_trp(p7, "two\nlines") == "# two\n# lines\n" + P7_TEXT


def test_file_round_trip(tmp_path, p7):
    path = tmp_path / "p7.trp"
    write_trp(path, p7, "x")
    assert path.read_bytes().endswith(b"\n") and b"\r" not in path.read_bytes()
    assert read_trp(path).steps == p7.steps


@given(patterns())
def test_round_trip_on_canonical_patterns(P):
    C = canonical_form(P)
    assert parse_trp(emit_trp(C)).steps == C.steps
    assert emit_trp(parse_trp(emit_trp(C))) == emit_trp(C)
