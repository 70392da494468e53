"""Color contraction: collapse maximal connected monochromatic components.

The quotient graph is properly colored (no edge joins equal colors), and for
runs with propagation the end state of the original graph is the lift of the
end state of its quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ColoredGraph, StateLabel
from .errors import DomainMismatchError


@dataclass(frozen=True)
class ContractionMap:
    """`component_of[v]` is the quotient vertex holding original vertex v.

    Components are indexed by their smallest original vertex, ascending, so
    the map is canonical for a given graph.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    quotient: ColoredGraph


def color_contract(graph: ColoredGraph) -> ContractionMap:
    n = graph.vertex_count
    colors = graph.colors
    nbrs = graph.neighbors
    comp = [-1] * n
    components: list[list[int]] = []
    for v in range(n):
        if comp[v] != -1:
            continue
        idx = len(components)
        comp[v] = idx
        members = [v]
        stack = [v]
        c = colors[v]
        while stack:
            w = stack.pop()
            for u in nbrs[w]:
                if comp[u] == -1 and colors[u] == c:
                    comp[u] = idx
                    members.append(u)
                    stack.append(u)
        components.append(sorted(members))
    qedges = set()
    for u, v in graph.edges:
        cu, cv = comp[u], comp[v]
        if cu != cv:
            qedges.add((cu, cv) if cu < cv else (cv, cu))
    quotient = ColoredGraph(
        len(components),
        frozenset(qedges),
        tuple(colors[members[0]] for members in components),
    )
    return ContractionMap(tuple(comp), tuple(tuple(m) for m in components), quotient)


def lift_end_state(quotient_state: StateLabel, cmap: ContractionMap) -> StateLabel:
    """Pull a quotient coloring back to the original vertices."""
    if len(quotient_state.colors) != cmap.quotient.vertex_count:
        raise DomainMismatchError(
            f"state colors {len(quotient_state.colors)} vertices, quotient has "
            f"{cmap.quotient.vertex_count}"
        )
    lifted = tuple(quotient_state.colors[c] for c in cmap.component_of)
    return StateLabel(lifted, quotient_state.step_index)
