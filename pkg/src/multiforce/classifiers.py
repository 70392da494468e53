"""Closed-form end-state predictions for runs with propagation.

All results are for the three-color cyclic network (palette {1,2,3}, rules
[1->2, 2->3, 3->1] in that order) except `classify_linear_r1`, which covers
the linear network [1->2, 2->3, 1->3].  `predict` recognizes either network
up to a renaming of colors and dispatches accordingly.

Rule order is part of a network's identity here: permuting the cyclic rules
(other than rotating them, which is a renaming) changes end states.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .contraction import color_contract
from .core import ColoredGraph, ForcingNetwork, Rule, is_connected
from .errors import (
    MissingColorError,
    NotCompleteBipartiteError,
    NotCompleteError,
    NotContractedError,
    PathTooLongError,
    ThreeColorsPresentError,
    UnsupportedNetworkError,
)

CYCLIC3 = ForcingNetwork(frozenset({1, 2, 3}), (Rule(1, 2), Rule(2, 3), Rule(3, 1)))
LINEAR_R1 = ForcingNetwork(frozenset({1, 2, 3}), (Rule(1, 2), Rule(2, 3), Rule(1, 3)))


@dataclass(frozen=True)
class EndStatePrediction:
    """Either Monochrome(color) or Unknown (color None); `basis` names the
    lemma or theorem case that decided it, for audit."""

    color: int | None
    basis: str

    @property
    def is_monochrome(self) -> bool:
        return self.color is not None

    def __str__(self) -> str:
        if self.color is None:
            return f"Unknown (basis: {self.basis})"
        return f"Monochrome {self.color} (basis: {self.basis})"


def _monochrome(color: int, basis: str) -> EndStatePrediction:
    return EndStatePrediction(color, basis)


def _unknown(basis: str) -> EndStatePrediction:
    return EndStatePrediction(None, basis)


# winner of each two-color (or one-color) configuration under the cyclic rules
_TWO_COLOR_WINNER = {
    frozenset({1, 2}): 1,
    frozenset({2, 3}): 2,
    frozenset({1, 3}): 3,
}


def _colors_of(graph: ColoredGraph, colors: Sequence[int] | None) -> tuple[int, ...]:
    got = tuple(colors) if colors is not None else graph.colors
    if len(got) != graph.vertex_count:
        raise ValueError(f"coloring has {len(got)} entries for {graph.vertex_count} vertices")
    return got


def classify_two_color(graph: ColoredGraph, colors: Sequence[int] | None = None) -> EndStatePrediction:
    """Cyclic network, connected graph, at most two of the colors {1,2,3} present."""
    cs = _colors_of(graph, colors)
    present = frozenset(cs)
    if not present <= {1, 2, 3}:
        raise ValueError(f"colors {sorted(present - {1, 2, 3})} outside {{1,2,3}}")
    if len(present) == 3:
        raise ThreeColorsPresentError("all three colors present; two-color lemma does not apply")
    if len(present) == 1:
        return _monochrome(next(iter(present)), "monochrome")
    return _monochrome(_TWO_COLOR_WINNER[present], "two-color lemma")


def _check_contracted_three(graph: ColoredGraph, cs: tuple[int, ...]) -> None:
    for u, v in graph.edges:
        if cs[u] == cs[v]:
            raise NotContractedError(f"edge ({u}, {v}) joins two vertices colored {cs[u]}")
    if frozenset(cs) != frozenset({1, 2, 3}):
        missing = sorted({1, 2, 3} - set(cs))
        raise MissingColorError(f"color {missing[0] if missing else '?'} not present")


def classify_three_color_conditions(
    graph: ColoredGraph, colors: Sequence[int] | None = None
) -> EndStatePrediction:
    """Sufficient conditions for a contracted, connected graph showing all
    three colors.  Checked in order; Unknown when none fires."""
    cs = _colors_of(graph, colors)
    _check_contracted_three(graph, cs)
    nbrs = graph.neighbors

    def shielded_neighbor(v: int, mid: int, ring: int) -> bool:
        # some neighbor of v colored `mid` all of whose neighbors are colored `ring`
        return any(
            cs[u] == mid and all(cs[w] == ring for w in nbrs[u])
            for u in nbrs[v]
        )

    verts = range(graph.vertex_count)
    if all(shielded_neighbor(v, 2, 3) for v in verts if cs[v] == 3):
        return _monochrome(1, "three-color lemma case 1")
    if all(any(cs[u] == 1 for u in nbrs[v]) for v in verts if cs[v] == 2):
        return _monochrome(3, "three-color lemma case 2")
    if all(shielded_neighbor(v, 3, 1) for v in verts if cs[v] == 1):
        return _monochrome(2, "three-color lemma case 3")
    return _unknown("no sufficient condition fired")


def classify_complete(graph: ColoredGraph, colors: Sequence[int] | None = None) -> EndStatePrediction:
    """Complete graph showing all three colors: always ends all-3."""
    cs = _colors_of(graph, colors)
    n = graph.vertex_count
    if len(graph.edges) != n * (n - 1) // 2:
        raise NotCompleteError(f"{len(graph.edges)} edges, complete graph on {n} needs {n * (n - 1) // 2}")
    if frozenset(cs) != frozenset({1, 2, 3}):
        raise MissingColorError("complete-graph lemma needs all three colors")
    return _monochrome(3, "complete-graph lemma")


def classify_complete_bipartite(
    graph: ColoredGraph,
    part_a: Sequence[int],
    part_b: Sequence[int],
    colors: Sequence[int] | None = None,
) -> EndStatePrediction:
    """Complete bipartite graph showing all three colors: all-1 when one whole
    part is colored 3, otherwise all-3."""
    cs = _colors_of(graph, colors)
    a, b = list(part_a), list(part_b)
    if not a or not b or sorted(a + b) != list(range(graph.vertex_count)):
        raise NotCompleteBipartiteError("parts must be non-empty and partition the vertices")
    need = {(u, v) if u < v else (v, u) for u in a for v in b}
    if graph.edges != frozenset(need):
        raise NotCompleteBipartiteError("edge set is not all pairs across the two parts")
    if frozenset(cs) != frozenset({1, 2, 3}):
        raise MissingColorError("complete-bipartite lemma needs all three colors")
    if all(cs[v] == 3 for v in a) or all(cs[v] == 3 for v in b):
        return _monochrome(1, "complete-bipartite lemma")
    return _monochrome(3, "complete-bipartite lemma")


def _contains(seq: tuple[int, ...], pat: tuple[int, ...]) -> bool:
    return any(seq[i : i + len(pat)] == pat for i in range(len(seq) - len(pat) + 1))


def classify_path(sequence: Sequence[int]) -> EndStatePrediction:
    """Contracted path colorings of length <= 5, given as the color sequence
    along the path.  Case analysis; each case is checked against the sequence
    and its reversal (a path read backwards is the same graph)."""
    s = tuple(sequence)
    k = len(s)
    if k > 5:
        raise PathTooLongError(f"sequence of length {k}; only k <= 5 is characterized")
    if k == 0:
        raise ValueError("empty sequence")
    for i in range(k - 1):
        if s[i] == s[i + 1]:
            raise NotContractedError(f"positions {i} and {i + 1} share color {s[i]}")
    present = frozenset(s)
    if not present <= {1, 2, 3}:
        raise ValueError(f"colors {sorted(present - {1, 2, 3})} outside {{1,2,3}}")
    if len(present) == 1:
        return _monochrome(s[0], "monochrome")
    if len(present) == 2:
        return _monochrome(_TWO_COLOR_WINNER[present], "two-color lemma")
    r = s[::-1]
    # (1) a 3-2-3 block: its 2 survives and eats every 3, unless a spare 3 holds out
    if _contains(s, (3, 2, 3)):
        return _monochrome(1 if s.count(3) == 2 else 2, "path theorem case 1")
    # (2) a 1-3-1 block, dually; but if every 2 still touches a 1 the first
    # propagating step wipes the 2s and the 3s win (1312 ends all-3, not all-2)
    if _contains(s, (1, 3, 1)):
        twos_covered = all(
            any(s[j] == 1 for j in (i - 1, i + 1) if 0 <= j < k)
            for i in range(k)
            if s[i] == 2
        )
        return _monochrome(2 if s.count(1) == 2 and not twos_covered else 3, "path theorem case 2")
    # (3) every 2 sits next to a 1, so the first propagating step wipes the 2s
    if all(
        any(s[j] == 1 for j in (i - 1, i + 1) if 0 <= j < k)
        for i in range(k)
        if s[i] == 2
    ):
        return _monochrome(3, "path theorem case 3")
    # (4) a 2-3-1 end block
    if s[:3] == (2, 3, 1) or r[:3] == (2, 3, 1):
        if s.count(3) == 1 or s == (2, 3, 1, 3, 2):
            return _monochrome(1, "path theorem case 4")
        return _monochrome(2, "path theorem case 4")
    # (5) everything else
    if s in ((2, 3, 2, 1, 3), (3, 1, 2, 3, 2)):
        return _monochrome(2, "path theorem case 5")
    return _monochrome(1, "path theorem case 5")


def classify_linear_r1(graph: ColoredGraph, colors: Sequence[int] | None = None) -> EndStatePrediction:
    """Linear network [1->2, 2->3, 1->3] on a connected graph: the least
    color present (in the order 1, 2, 3) wins."""
    cs = _colors_of(graph, colors)
    present = frozenset(cs)
    if not present <= {1, 2, 3}:
        raise ValueError(f"colors {sorted(present - {1, 2, 3})} outside {{1,2,3}}")
    for c in (1, 2, 3):
        if c in present:
            return _monochrome(c, "linear network order")
    raise ValueError("empty coloring")


def _find_renaming(network: ForcingNetwork, reference: ForcingNetwork, ordered: bool):
    """A palette bijection sending `network` onto `reference`, or None.

    Rule order must match for the cyclic network (it is behavior); the linear
    network's end states are order-independent, so a set match suffices.
    """
    if len(network.palette) != len(reference.palette) or len(network.rules) != len(reference.rules):
        return None
    src = sorted(network.palette)
    for image in permutations(sorted(reference.palette)):
        sigma = dict(zip(src, image))
        renamed = [Rule(sigma[r.source], sigma[r.target]) for r in network.rules]
        if ordered:
            if tuple(renamed) == reference.rules:
                return sigma
        else:
            if set(renamed) == set(reference.rules):
                return sigma
    return None


def _bipartition(graph: ColoredGraph) -> tuple[list[int], list[int]] | None:
    """Two-color a connected graph; None if an odd cycle shows up."""
    n = graph.vertex_count
    side = [-1] * n
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for u in graph.neighbors[v]:
            if side[u] == -1:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    return [v for v in range(n) if side[v] == 0], [v for v in range(n) if side[v] == 1]


def _path_order(graph: ColoredGraph) -> list[int] | None:
    """Vertices in path order if the graph is a path, else None."""
    n = graph.vertex_count
    if n == 1:
        return [0]
    if len(graph.edges) != n - 1:
        return None
    degs = [len(graph.neighbors[v]) for v in range(n)]
    ends = [v for v in range(n) if degs[v] == 1]
    if len(ends) != 2 or any(d > 2 for d in degs):
        return None
    order = [min(ends)]
    prev = -1
    while len(order) < n:
        nxt = [u for u in graph.neighbors[order[-1]] if u != prev]
        if len(nxt) != 1:
            return None  # disconnected leftovers
        prev = order[-1]
        order.append(nxt[0])
    return order


def _predict_cyclic(graph: ColoredGraph) -> EndStatePrediction:
    """Dispatch for the canonical cyclic network; graph colors already in {1,2,3}."""
    if graph.vertex_count == 0:
        return _unknown("empty graph")
    present = frozenset(graph.colors)
    if len(present) == 1:
        return _monochrome(next(iter(present)), "monochrome")
    if not is_connected(graph):
        return _unknown("graph is not connected")
    if len(present) == 2:
        return classify_two_color(graph)
    q = color_contract(graph).quotient
    n = q.vertex_count
    if len(q.edges) == n * (n - 1) // 2:
        return classify_complete(q)
    parts = _bipartition(q)
    if parts is not None and len(q.edges) == len(parts[0]) * len(parts[1]):
        return classify_complete_bipartite(q, parts[0], parts[1])
    order = _path_order(q)
    if order is not None and n <= 5:
        return classify_path([q.colors[v] for v in order])
    return classify_three_color_conditions(q)


def predict(graph: ColoredGraph, network: ForcingNetwork) -> EndStatePrediction:
    """Try every applicable characterization; renames colors as needed and
    maps the answer back.  UnsupportedNetwork if the network is neither the
    cyclic one nor the linear one up to renaming."""
    sigma = _find_renaming(network, LINEAR_R1, ordered=False)
    if sigma is not None:
        recolored = graph.with_colors([sigma[c] for c in graph.colors])
        if recolored.vertex_count == 0:
            return _unknown("empty graph")
        present = frozenset(recolored.colors)
        if len(present) == 1:
            pred = _monochrome(next(iter(present)), "monochrome")
        elif not is_connected(recolored):
            return _unknown("graph is not connected")
        else:
            pred = classify_linear_r1(recolored)
    else:
        sigma = _find_renaming(network, CYCLIC3, ordered=True)
        if sigma is None:
            raise UnsupportedNetworkError(
                "no characterization for this network (not cyclic or linear up to renaming)"
            )
        recolored = graph.with_colors([sigma[c] for c in graph.colors])
        pred = _predict_cyclic(recolored)
    if pred.color is None:
        return pred
    inverse = {v: k for k, v in sigma.items()}
    return EndStatePrediction(inverse[pred.color], pred.basis)
