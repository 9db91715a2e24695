"""Reader and writer for the ``.trp`` pattern format.

::

    # optional comment lines
    period 3
    0 0 1
    1 1 1
    2 2 1

Line one (after comments) is ``period <q>``; then ``q`` lines
``<step> <branch> <rank>`` with steps ``0..q-1`` in order. The file must
end with a newline.
"""

from __future__ import annotations

from pathlib import Path

from .core import TriodPattern
from .errors import InvalidPattern, ParseError


def parse_trp(text: str) -> TriodPattern:
    if not text:
        raise ParseError(1, "empty input")
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing trailing newline")
    period = None
    steps: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.split("\n")[:-1], start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if period is None:
            if len(fields) != 2 or fields[0] != "period":
                raise ParseError(lineno, "expected 'period <q>'")
            period = _int(fields[1], lineno)
            if period < 1:
                raise ParseError(lineno, "period must be positive")
            continue
        if len(fields) != 3:
            raise ParseError(lineno, "expected '<step> <branch> <rank>'")
        step, branch, rank = (_int(f, lineno) for f in fields)
        if step != len(steps):
            raise ParseError(lineno, f"expected step {len(steps)}, got {step}")
        if len(steps) == period:
            raise ParseError(lineno, f"more than {period} steps")
        steps.append((branch, rank))
    if period is None:
        raise ParseError(1, "no 'period' line")
    if len(steps) != period:
        raise ParseError(text.count("\n"), f"expected {period} steps, got {len(steps)}")
    try:
        return TriodPattern(tuple(steps))
    except InvalidPattern:
        raise
    except ValueError as exc:  # pragma: no cover - defensive
        raise InvalidPattern(str(exc)) from exc


def _int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(lineno, f"{token!r} is not a non-negative decimal integer")
    return int(token)


def emit_trp(pattern: TriodPattern, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"period {pattern.period}")
    lines.extend(f"{k} {b} {r}" for k, (b, r) in enumerate(pattern.steps))
    return "\n".join(lines) + "\n"


def read_trp(path: str | Path) -> TriodPattern:
    return parse_trp(Path(path).read_text(encoding="utf-8"))


def write_trp(path: str | Path, pattern: TriodPattern, comment: str | None = None) -> None:
    Path(path).write_text(emit_trp(pattern, comment), encoding="utf-8", newline="\n")
