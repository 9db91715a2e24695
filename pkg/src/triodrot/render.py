"""DOT and SVG drawings of patterns and their Markov graphs.

Output is a pure function of the input: coordinates are printed with a
fixed number of decimals and elements are emitted in a fixed order.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .core import TriodPattern, branch_shift
from .graphs import MarkovGraph, interval_graph, point_graph, vertex_label
from .plinear import build
from .twist import BLACK, GREEN, RED, color_table

TARGETS = ("pattern", "point-graph", "interval-graph")
FORMATS = ("dot", "svg")

FILL = {GREEN: "#2e8b57", BLACK: "#111111", RED: "#c0392b"}

# b0 points up, the others follow counterclockwise on screen
_SQ3 = math.sqrt(3) / 2
DIRECTIONS = ((0.0, -1.0), (-_SQ3, 0.5), (_SQ3, 0.5))

UNIT = 48.0
MARGIN = 36.0


def _num(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def pattern_dot(pattern: TriodPattern, name: str = "pattern") -> str:
    table = color_table(pattern)
    out = [f"digraph {name} {{"]
    for k, (b, r) in enumerate(pattern.steps):
        out.append(f'  "b{b}r{r}" [color="{table.colors[k]}", xlabel="{k}"];')
    for k, (b, r) in enumerate(pattern.steps):
        nb, nr = pattern.steps[(k + 1) % pattern.period]
        out.append(f'  "b{b}r{r}" -> "b{nb}r{nr}" [w="{branch_shift(b, nb)}/3"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _svg_header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" '
        'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#555555"/></marker>',
        "</defs>",
    ]


def pattern_svg(pattern: TriodPattern) -> str:
    table = color_table(pattern)
    reach = max(pattern.counts) + 1
    radius = reach * UNIT
    size = 2 * (radius + MARGIN)
    cx = cy = size / 2

    def at(b: int, dist: float) -> tuple[float, float]:
        dx, dy = DIRECTIONS[b]
        return cx + dx * dist * UNIT, cy + dy * dist * UNIT

    out = _svg_header(size, size)
    for b in range(3):
        x, y = at(b, reach)
        out.append(
            f'<line x1="{_num(cx)}" y1="{_num(cy)}" x2="{_num(x)}" y2="{_num(y)}" '
            'stroke="#999999" stroke-width="2"/>'
        )
        lx, ly = at(b, reach + 0.35)
        out.append(f'<text x="{_num(lx)}" y="{_num(ly)}" font-size="13" text-anchor="middle">b{b}</text>')
    out.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="4" fill="#999999"/>')
    q = pattern.period
    for k, (b, r) in enumerate(pattern.steps):
        nb, nr = pattern.steps[(k + 1) % q]
        x1, y1 = at(b, r)
        x2, y2 = at(nb, nr)
        # bow every arrow to the left of its chord so back-and-forth moves separate
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        bx, by = mx - 0.25 * dy, my + 0.25 * dx
        # shorten the end so the arrowhead stays outside the target disc
        ex, ey = x2 - bx, y2 - by
        norm = math.hypot(ex, ey) or 1.0
        x2s, y2s = x2 - 8 * ex / norm, y2 - 8 * ey / norm
        out.append(
            f'<path d="M {_num(x1)} {_num(y1)} Q {_num(bx)} {_num(by)} {_num(x2s)} {_num(y2s)}" '
            'fill="none" stroke="#555555" stroke-width="1.2" marker-end="url(#arrow)"/>'
        )
    for k, (b, r) in enumerate(pattern.steps):
        x, y = at(b, r)
        out.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="6" fill="{FILL[table.colors[k]]}">'
            f"<title>step {k}: b{b} rank {r}, {table.colors[k]}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def graph_svg(graph: MarkovGraph) -> str:
    """Vertices on a circle in graph order, edges as straight arrows."""
    n = len(graph.vertices)
    radius = max(80.0, 22.0 * n)
    size = 2 * (radius + 3 * MARGIN)
    c = size / 2
    pos = {}
    for i, v in enumerate(graph.vertices):
        angle = -math.pi / 2 + 2 * math.pi * i / n
        pos[v] = (c + radius * math.cos(angle), c + radius * math.sin(angle))
    out = _svg_header(size, size)
    for u, v, w in graph.edges():
        x1, y1 = pos[u]
        x2, y2 = pos[v]
        if u == v:
            out.append(
                f'<circle cx="{_num(x1)}" cy="{_num(y1 - 16)}" r="12" fill="none" stroke="#555555"/>'
            )
            continue
        dx, dy = x2 - x1, y2 - y1
        d = math.hypot(dx, dy)
        sx, sy = x1 + 10 * dx / d, y1 + 10 * dy / d
        ex, ey = x2 - 10 * dx / d, y2 - 10 * dy / d
        out.append(
            f'<line x1="{_num(sx)}" y1="{_num(sy)}" x2="{_num(ex)}" y2="{_num(ey)}" '
            f'stroke="#555555" marker-end="url(#arrow)"><title>{w}</title></line>'
        )
    for v in graph.vertices:
        x, y = pos[v]
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="8" fill="#ffffff" stroke="#111111"/>')
        out.append(
            f'<text x="{_num(x)}" y="{_num(y - 14)}" font-size="11" text-anchor="middle">'
            f"{escape(vertex_label(v))}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(pattern: TriodPattern, target: str = "pattern", fmt: str = "svg") -> str:
    if target not in TARGETS:
        raise ValueError(f"target must be one of {', '.join(TARGETS)}")
    if fmt not in FORMATS:
        raise ValueError(f"format must be dot or svg, not {fmt!r}")
    if target == "pattern":
        return pattern_svg(pattern) if fmt == "svg" else pattern_dot(pattern)
    fmap = build(pattern)
    graph = point_graph(fmap) if target == "point-graph" else interval_graph(fmap)
    if fmt == "dot":
        return graph.to_dot(target.replace("-", "_"))
    return graph_svg(graph)
