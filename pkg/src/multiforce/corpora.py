"""Graph families, coloring enumeration, and seeded random corpora.

Everything here is deterministic: exhaustive enumerations come out in a fixed
lexicographic order, and random pieces take an explicit seed.
"""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple

from .core import ColoredGraph, ForcingNetwork, validate_network
from .errors import BudgetExceededError, InvalidParamsError

DEFAULT_BUDGET = 10_000_000


class GraphSkeleton(NamedTuple):
    """An uncolored simple graph."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def colored(self, colors: Iterable[int]) -> ColoredGraph:
        return ColoredGraph(self.vertex_count, self.edges, tuple(colors))


def _skeleton(n: int, edges: Iterable[tuple[int, int]]) -> GraphSkeleton:
    return GraphSkeleton(n, frozenset((u, v) if u < v else (v, u) for u, v in edges))


def generate_family(family: str, *, n: int | None = None, m: int | None = None,
                    seed: int | None = None, extra_edge_prob: float = 0.25) -> GraphSkeleton:
    """Build one named graph skeleton.

    families: path(n), cycle(n>=3), complete(n), complete_bipartite(m, n),
    star(n: total vertices, center 0), random_tree(n, seed),
    random_connected(n, seed, extra_edge_prob).
    """
    if family == "path":
        if n is None or n < 1:
            raise InvalidParamsError("path needs n >= 1")
        return _skeleton(n, ((i, i + 1) for i in range(n - 1)))
    if family == "cycle":
        if n is None or n < 3:
            raise InvalidParamsError("cycle needs n >= 3")
        return _skeleton(n, (((i, (i + 1) % n)) for i in range(n)))
    if family == "complete":
        if n is None or n < 1:
            raise InvalidParamsError("complete needs n >= 1")
        return _skeleton(n, combinations(range(n), 2))
    if family == "complete_bipartite":
        if m is None or n is None or m < 1 or n < 1:
            raise InvalidParamsError("complete_bipartite needs m >= 1 and n >= 1")
        return _skeleton(m + n, ((a, b) for a in range(m) for b in range(m, m + n)))
    if family == "star":
        if n is None or n < 1:
            raise InvalidParamsError("star needs n >= 1")
        return _skeleton(n, ((0, i) for i in range(1, n)))
    if family == "random_tree":
        if n is None or n < 1 or seed is None:
            raise InvalidParamsError("random_tree needs n >= 1 and a seed")
        return random_tree(random.Random(seed), n)
    if family == "random_connected":
        if n is None or n < 1 or seed is None:
            raise InvalidParamsError("random_connected needs n >= 1 and a seed")
        return random_connected_graph(random.Random(seed), n, extra_edge_prob)
    raise InvalidParamsError(f"unknown family {family!r}")


def tree_from_pruefer(seq: tuple[int, ...]) -> GraphSkeleton:
    n = len(seq) + 2
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        for leaf in range(n):
            if degree[leaf] == 1:
                edges.append((leaf, v))
                degree[leaf] -= 1
                degree[v] -= 1
                break
    last = [v for v in range(n) if degree[v] == 1]
    edges.append((last[0], last[1]))
    return _skeleton(n, edges)


def labeled_trees(n: int) -> Iterator[GraphSkeleton]:
    """All n^(n-2) labeled trees on n vertices, in lexicographic Pruefer order."""
    if n < 1:
        raise InvalidParamsError("n >= 1")
    if n == 1:
        yield _skeleton(1, ())
        return
    if n == 2:
        yield _skeleton(2, ((0, 1),))
        return
    def rec(prefix: list[int]):
        if len(prefix) == n - 2:
            yield tree_from_pruefer(tuple(prefix))
            return
        for v in range(n):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()
    yield from rec([])


def connected_graphs(n: int) -> Iterator[GraphSkeleton]:
    """All connected labeled graphs on n vertices, ordered by edge-subset bitmask."""
    if n < 1:
        raise InvalidParamsError("n >= 1")
    slots = list(combinations(range(n), 2))
    for mask in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        if _edges_connected(n, edges):
            yield _skeleton(n, edges)


def _edges_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            merged += 1
    return merged == n - 1


def random_tree(rng: random.Random, n: int) -> GraphSkeleton:
    if n <= 2:
        return _skeleton(n, ((0, 1),) if n == 2 else ())
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    return tree_from_pruefer(seq)


def random_connected_graph(rng: random.Random, n: int, extra_edge_prob: float = 0.25) -> GraphSkeleton:
    """A uniform random spanning tree plus independent extra edges."""
    tree = random_tree(rng, n)
    edges = set(tree.edges)
    for pair in combinations(range(n), 2):
        if pair not in edges and rng.random() < extra_edge_prob:
            edges.add(pair)
    return _skeleton(n, edges)


def random_network(rng: random.Random, max_colors: int = 4, acyclic: bool = False) -> ForcingNetwork:
    """A random rule network over a palette of 2..max_colors colors.

    With acyclic=True the rules are drawn forward along a random color order,
    so the rule digraph has no directed cycle; at least one rule always.
    """
    k = rng.randint(2, max_colors)
    palette = list(range(1, k + 1))
    order = palette[:]
    rng.shuffle(order)
    pairs = []
    if acyclic:
        for i in range(k):
            for j in range(i + 1, k):
                pairs.append((order[i], order[j]))
    else:
        pairs = [(a, b) for a in palette for b in palette if a != b]
    rng.shuffle(pairs)
    count = rng.randint(1, len(pairs))
    return validate_network(palette, pairs[:count])


def enumerate_colorings(
    skeleton: GraphSkeleton | ColoredGraph,
    palette: Iterable[int],
    *,
    all_colors_present: bool = False,
    contracted: bool = False,
    budget: int | None = DEFAULT_BUDGET,
) -> Iterator[tuple[int, ...]]:
    """All colorings of the skeleton's vertices, lexicographic over the sorted
    palette.  Filters: all_colors_present keeps colorings using every palette
    color; contracted keeps proper colorings (no edge joins equal colors).

    Raises BudgetExceeded up front when the unfiltered space is bigger than
    the budget.
    """
    pal = sorted(set(palette))
    if not pal:
        raise InvalidParamsError("palette is empty")
    n = skeleton.vertex_count
    total = len(pal) ** n
    if budget is not None and total > budget:
        raise BudgetExceededError(f"{total} colorings exceed budget {budget}")
    edges = skeleton.edges
    need = frozenset(pal) if all_colors_present else None

    def ok(cs: tuple[int, ...]) -> bool:
        if need is not None and frozenset(cs) != need:
            return False
        if contracted and any(cs[u] == cs[v] for u, v in edges):
            return False
        return True

    for cs in product(pal, repeat=n):
        if ok(cs):
            yield cs
