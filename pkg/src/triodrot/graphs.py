"""Markov graphs of a pattern and loop machinery over them.

Both graphs carry displacement weights in ``{0, 1/3, 2/3}``. Loops are
closed walks identified up to cyclic rotation (not reversal), and are
always produced in a deterministic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterator, Sequence

from .core import Placement, branch_shift
from .errors import BudgetExceeded, NoCycle
from .plinear import BasicInterval, PLinearMap

POINT = "point"
INTERVAL = "interval"


def vertex_branch(v) -> int:
    return v.branch if isinstance(v, BasicInterval) else v[0]


def vertex_label(v) -> str:
    if isinstance(v, BasicInterval):
        return v.label()
    return f"b{v[0]}r{v[1]}"


@dataclass(frozen=True, eq=False)
class MarkovGraph:
    kind: str
    vertices: tuple
    successors: dict = field(repr=False)

    @classmethod
    def from_edges(cls, kind: str, vertices: Sequence, edges) -> "MarkovGraph":
        vertices = tuple(sorted(vertices))
        succ = {v: [] for v in vertices}
        for u, v in edges:
            succ[u].append(v)
        return cls(kind, vertices, {v: tuple(sorted(set(ws))) for v, ws in succ.items()})

    def has_edge(self, u, v) -> bool:
        return v in self.successors.get(u, ())

    def weight(self, u, v) -> Fraction:
        return Fraction(branch_shift(vertex_branch(u), vertex_branch(v)), 3)

    def edges(self) -> Iterator[tuple[Hashable, Hashable, Fraction]]:
        for u in self.vertices:
            for v in self.successors[u]:
                yield u, v, self.weight(u, v)

    def to_dot(self, name: str | None = None) -> str:
        name = name or f"{self.kind}_graph"
        out = [f"digraph {name} {{"]
        for v in self.vertices:
            out.append(f'  "{vertex_label(v)}";')
        for u, v, _ in self.edges():
            j = branch_shift(vertex_branch(u), vertex_branch(v))
            out.append(f'  "{vertex_label(u)}" -> "{vertex_label(v)}" [w="{j}/3"];')
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Loop:
    kind: str
    vertices: tuple
    displacement: Fraction

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def rotation_number(self) -> Fraction:
        return self.displacement / self.length

    def rotation_pair(self) -> tuple[int, int]:
        return int(self.displacement), self.length


def make_loop(graph: MarkovGraph, vertices: Sequence) -> Loop:
    vertices = tuple(vertices)
    total = Fraction(0)
    for i, u in enumerate(vertices):
        v = vertices[(i + 1) % len(vertices)]
        if not graph.has_edge(u, v):
            raise ValueError(f"{vertex_label(u)} -> {vertex_label(v)} is not an edge")
        total += graph.weight(u, v)
    return Loop(graph.kind, vertices, total)


def point_graph(fmap: PLinearMap) -> MarkovGraph:
    """Arrow ``x -> y`` iff some ``z`` with ``x >= z`` has ``f(z) >= y``."""
    pattern = fmap.pattern
    vertices = list(pattern.steps)
    edges = []
    for b, r in vertices:
        reach = [0, 0, 0]
        for s in range(1, r + 1):
            img = fmap.image_at(b, s)
            reach[img.branch] = max(reach[img.branch], int(img.dist))
        for y in vertices:
            if reach[y[0]] >= y[1]:
                edges.append(((b, r), y))
    return MarkovGraph.from_edges(POINT, vertices, edges)


def interval_graph(fmap: PLinearMap) -> MarkovGraph:
    """Arrow ``I -> J`` iff ``f(I)`` contains ``J``."""
    edges = [(I, J) for I in fmap.intervals for J in fmap.intervals if fmap.covers(I, J)]
    return MarkovGraph.from_edges(INTERVAL, fmap.intervals, edges)


def fundamental_point_loop(graph: MarkovGraph, steps: Sequence[Placement]) -> Loop:
    return make_loop(graph, steps)


def _is_canonical_rotation(walk: list[int]) -> bool:
    s = walk[0]
    for i in range(1, len(walk)):
        if walk[i] == s and walk[i:] + walk[:i] < walk:
            return False
    return True


class _Indexed:
    """Integer view of a graph used by the search routines."""

    def __init__(self, graph: MarkovGraph):
        self.graph = graph
        self.vertices = graph.vertices
        index = {v: i for i, v in enumerate(graph.vertices)}
        self.succ = [[index[w] for w in graph.successors[v]] for v in graph.vertices]
        self.pred = [[] for _ in graph.vertices]
        for u, ws in enumerate(self.succ):
            for w in ws:
                self.pred[w].append(u)
        self.thirds = [
            [branch_shift(vertex_branch(graph.vertices[u]), vertex_branch(graph.vertices[w])) for w in ws]
            for u, ws in enumerate(self.succ)
        ]

    def to_loop(self, walk: list[int], thirds: int) -> Loop:
        return Loop(self.graph.kind, tuple(self.vertices[i] for i in walk), Fraction(thirds, 3))

    def distances_to(self, s: int) -> list[float]:
        """Edges needed to reach ``s`` using only vertices ``>= s``."""
        dist = [float("inf")] * len(self.vertices)
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in self.pred[v]:
                    if u >= s and dist[u] == float("inf"):
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        return dist


def enumerate_loops(graph: MarkovGraph, max_len: int, budget: int | None = None) -> Iterator[Loop]:
    """Every closed walk of length ``<= max_len``, once per cyclic rotation class.

    Walks are listed from their lexicographically least rotation, in
    lexicographic order of that rotation (vertex order as in the graph).
    Raises :class:`BudgetExceeded` once more than ``budget`` loops would be
    yielded.
    """
    if max_len < 1:
        return
    g = _Indexed(graph)
    emitted = 0
    for s in range(len(g.vertices)):
        dist = g.distances_to(s)
        walk = [s]
        thirds = [0]

        def extend(v: int) -> Iterator[Loop]:
            nonlocal emitted
            k = len(walk)
            for w, t in zip(g.succ[v], g.thirds[v]):
                if w == s and k <= max_len and _is_canonical_rotation(walk):
                    emitted += 1
                    if budget is not None and emitted > budget:
                        raise BudgetExceeded(f"more than {budget} loops up to length {max_len}")
                    yield g.to_loop(walk, thirds[-1] + t)
                    break
            for w, t in zip(g.succ[v], g.thirds[v]):
                # edges still needed to close the walk after stepping to w
                need = 1 if w == s else dist[w]
                if w < s or k + need > max_len:
                    continue
                walk.append(w)
                thirds.append(thirds[-1] + t)
                yield from extend(w)
                walk.pop()
                thirds.pop()

        yield from extend(s)


def loops_with_displacement(
    graph: MarkovGraph, length: int, thirds_total: int, budget: int | None = None
) -> Iterator[Loop]:
    """Closed walks of exactly ``length`` edges with displacement ``thirds_total / 3``.

    Dead branches are cut with a per-start table of reachable displacement
    totals, so the search only visits prefixes of qualifying loops.
    """
    if length < 1:
        return
    g = _Indexed(graph)
    n = len(g.vertices)
    emitted = 0
    for s in range(n):
        # back[r][v]: bitmask of displacement totals (in thirds) of walks
        # with r edges from v to s through vertices >= s
        back = [[0] * n for _ in range(length + 1)]
        back[0][s] = 1
        for r in range(1, length + 1):
            prev = back[r - 1]
            row = back[r]
            for v in range(s, n):
                mask = 0
                for w, t in zip(g.succ[v], g.thirds[v]):
                    if w >= s and prev[w]:
                        mask |= prev[w] << t
                row[v] = mask
        if not (back[length][s] >> thirds_total) & 1:
            continue
        walk = [s]

        def extend(v: int, used: int) -> Iterator[Loop]:
            nonlocal emitted
            remaining = length - len(walk)
            for w, t in zip(g.succ[v], g.thirds[v]):
                if w < s:
                    continue
                need = thirds_total - used - t
                if need < 0 or not (back[remaining][w] >> need) & 1:
                    continue
                if remaining == 0:
                    # w == s necessarily
                    if _is_canonical_rotation(walk):
                        emitted += 1
                        if budget is not None and emitted > budget:
                            raise BudgetExceeded(f"more than {budget} loops of length {length}")
                        yield g.to_loop(walk, thirds_total)
                    continue
                walk.append(w)
                yield from extend(w, used + t)
                walk.pop()

        yield from extend(s, 0)


def _min_mean(n: int, edges: list[tuple[int, int, Fraction]]) -> Fraction:
    # Karp, with every vertex as a source of weight 0
    table: list[list[Fraction | None]] = [[Fraction(0)] * n]
    for _ in range(n):
        prev = table[-1]
        row: list[Fraction | None] = [None] * n
        for u, v, w in edges:
            if prev[u] is not None:
                cand = prev[u] + w
                if row[v] is None or cand < row[v]:
                    row[v] = cand
        table.append(row)
    best = None
    for v in range(n):
        last = table[n][v]
        if last is None:
            continue
        worst = max(
            (last - table[k][v]) / (n - k) for k in range(n) if table[k][v] is not None
        )
        if best is None or worst < best:
            best = worst
    if best is None:
        raise NoCycle("graph has no cycle")
    return best


def cycle_mean_extremes(graph: MarkovGraph) -> tuple[Fraction, Fraction]:
    """Exact minimum and maximum mean edge weight over all cycles."""
    index = {v: i for i, v in enumerate(graph.vertices)}
    edges = [(index[u], index[v], w) for u, v, w in graph.edges()]
    n = len(graph.vertices)
    lo = _min_mean(n, edges)
    hi = -_min_mean(n, [(u, v, -w) for u, v, w in edges])
    return lo, hi
