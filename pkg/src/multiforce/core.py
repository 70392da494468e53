"""Core types: color-change rules, forcing networks, colored graphs, state labels.

Vertices are dense 0-based integers.  Colors are small positive integers.
Everything is immutable once built; the validating constructors
(`validate_network`, `validate_colored_graph`) are the intended entry points.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    ColorOutsidePaletteError,
    DuplicateEdgeError,
    DuplicateRuleError,
    EmptyPaletteError,
    InvalidColorError,
    RuleOutsidePaletteError,
    SelfLoopEdgeError,
    SelfLoopRuleError,
    UncoloredVertexError,
    VertexIndexOutOfRangeError,
)


class Rule(NamedTuple):
    """One color-change rule: a `source`-colored vertex recolors an adjacent
    `target`-colored vertex to `source`."""

    source: int
    target: int

    def __str__(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class ForcingNetwork:
    """A palette of colors plus an ordered list of color-change rules."""

    palette: frozenset[int]
    rules: tuple[Rule, ...]

    def __str__(self) -> str:
        rules = ", ".join(str(r) for r in self.rules)
        return f"network(palette={{{', '.join(map(str, sorted(self.palette)))}}}, rules=[{rules}])"


@dataclass(frozen=True)
class ColoredGraph:
    """A finite simple graph together with a total coloring of its vertices."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]  # normalized (u, v) with u < v
    colors: tuple[int, ...]

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def with_colors(self, colors: Sequence[int]) -> "ColoredGraph":
        """Same skeleton, different coloring; shares the adjacency cache."""
        colors = tuple(colors)
        if len(colors) != self.vertex_count:
            raise UncoloredVertexError(
                f"coloring has {len(colors)} entries for {self.vertex_count} vertices"
            )
        other = ColoredGraph(self.vertex_count, self.edges, colors)
        if "neighbors" in self.__dict__:
            other.__dict__["neighbors"] = self.__dict__["neighbors"]
        return other


@dataclass(frozen=True)
class StateLabel:
    """A coloring snapshot; `step_index` counts completed steps of whatever
    run produced it (0 for an initial state)."""

    colors: tuple[int, ...]
    step_index: int = 0


def validate_network(palette: Iterable[int], rules: Iterable[tuple[int, int]]) -> ForcingNetwork:
    """Check a network description and freeze it.

    Rules keep their given order; order is observable behavior (it decides
    which rule fires first in a run).
    """
    pal = frozenset(palette)
    if not pal:
        raise EmptyPaletteError("palette is empty")
    for c in pal:
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise InvalidColorError(f"palette color {c!r} is not a positive integer")
    seen: set[tuple[int, int]] = set()
    out: list[Rule] = []
    for raw in rules:
        source, target = raw
        if source not in pal or target not in pal:
            raise RuleOutsidePaletteError(f"rule {source}->{target} mentions a color outside the palette")
        if source == target:
            raise SelfLoopRuleError(f"rule {source}->{target} is a self-loop")
        if (source, target) in seen:
            raise DuplicateRuleError(f"rule {source}->{target} appears twice")
        seen.add((source, target))
        out.append(Rule(source, target))
    return ForcingNetwork(pal, tuple(out))


def is_acyclic(network: ForcingNetwork) -> bool:
    """True iff the rule digraph (palette colors as nodes, rules as arcs) has no directed cycle."""
    ts: TopologicalSorter = TopologicalSorter({c: [] for c in network.palette})
    for rule in network.rules:
        ts.add(rule.target, rule.source)
    try:
        ts.prepare()
    except CycleError:
        return False
    return True


def _normalize_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    norm: set[tuple[int, int]] = set()
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise VertexIndexOutOfRangeError(f"edge endpoint {w} outside 0..{vertex_count - 1}")
        if u == v:
            raise SelfLoopEdgeError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in norm:
            raise DuplicateEdgeError(f"edge {e} appears twice")
        norm.add(e)
    return frozenset(norm)


def validate_colored_graph(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    coloring: Sequence[int] | Mapping[int, int],
    network: ForcingNetwork,
) -> ColoredGraph:
    """Check a colored-graph description against a network's palette and freeze it."""
    if vertex_count < 0:
        raise VertexIndexOutOfRangeError("vertex_count must be non-negative")
    norm = _normalize_edges(vertex_count, edges)
    if isinstance(coloring, Mapping):
        for v in coloring:
            if not 0 <= v < vertex_count:
                raise VertexIndexOutOfRangeError(f"colored vertex {v} outside 0..{vertex_count - 1}")
        missing = [v for v in range(vertex_count) if v not in coloring]
        if missing:
            raise UncoloredVertexError(f"vertex {missing[0]} has no color")
        colors = tuple(coloring[v] for v in range(vertex_count))
    else:
        if len(coloring) < vertex_count:
            raise UncoloredVertexError(f"vertex {len(coloring)} has no color")
        if len(coloring) > vertex_count:
            raise VertexIndexOutOfRangeError(
                f"coloring has {len(coloring)} entries for {vertex_count} vertices"
            )
        colors = tuple(coloring)
    for v, c in enumerate(colors):
        if c not in network.palette:
            raise ColorOutsidePaletteError(f"vertex {v} colored {c}, not in palette")
    return ColoredGraph(vertex_count, norm, colors)


def is_connected(graph: ColoredGraph) -> bool:
    """BFS reachability from vertex 0; empty and single-vertex graphs count as connected."""
    n = graph.vertex_count
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    reached = 1
    nbrs = graph.neighbors
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                reached += 1
                queue.append(u)
    return reached == n
