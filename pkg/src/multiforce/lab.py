"""Claim verification over enumerated and sampled corpora.

Every registered claim can be checked over an exhaustive corpus (small n),
a seeded random corpus, or both.  Work may fan out over processes; reports
come back in corpus order either way, so a report is a pure function of
(claim, parameters, seed).
"""

from __future__ import annotations

import random
import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .classifiers import (
    classify_linear_r1,
    classify_path,
    classify_three_color_conditions,
    classify_two_color,
    predict,
)
from .contraction import color_contract, lift_end_state
from .core import ColoredGraph, ForcingNetwork, Rule
from .corpora import (
    DEFAULT_BUDGET,
    GraphSkeleton,
    connected_graphs,
    enumerate_colorings,
    generate_family,
    labeled_trees,
    random_connected_graph,
    random_network,
    random_tree,
)
from .engine import (
    NonTerminating,
    end_state,
    run_with_propagation,
    run_without_propagation,
)
from .errors import (
    BudgetExceededError,
    DisconnectedError,
    InvalidParamsError,
    LimitExceededError,
    UnknownClaimError,
)

_PAL3 = (1, 2, 3)
_RULES3 = ((1, 2), (2, 3), (3, 1))
_RULES_R1 = ((1, 2), (2, 3), (1, 3))


@dataclass(frozen=True)
class Counterexample:
    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: tuple[int, ...]
    network: str
    expected: str
    observed: str

    def as_document(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "coloring": list(self.coloring),
            "network": self.network,
            "expected": self.expected,
            "observed": self.observed,
        }


@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    instances_checked: int
    counterexamples: tuple[Counterexample, ...]
    elapsed_ms: int
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_document(self) -> dict:
        doc: dict = {
            "claim_id": self.claim_id,
            "instances_checked": self.instances_checked,
            "counterexamples": [c.as_document() for c in self.counterexamples],
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        doc["elapsed_ms"] = self.elapsed_ms
        return doc


@dataclass(frozen=True)
class _Chunk:
    """A batch of colorings sharing one skeleton and one network."""

    n: int
    edges: tuple[tuple[int, int], ...]
    colorings: tuple[tuple[int, ...], ...]
    palette: tuple[int, ...] = _PAL3
    rules: tuple[tuple[int, int], ...] = _RULES3
    meta: int | None = None  # claim-specific (tree diameter)


def _chunk_graph(chunk: _Chunk) -> ColoredGraph:
    return ColoredGraph(chunk.n, frozenset(chunk.edges), tuple([0] * chunk.n))


def _chunk_network(chunk: _Chunk) -> ForcingNetwork:
    return ForcingNetwork(frozenset(chunk.palette), tuple(Rule(s, t) for s, t in chunk.rules))


def _network_str(chunk: _Chunk) -> str:
    return "[" + ", ".join(f"{s}->{t}" for s, t in chunk.rules) + "]"


def _cx(chunk: _Chunk, coloring: tuple[int, ...], expected: str, observed: str) -> Counterexample:
    return Counterexample(
        chunk.n, tuple(sorted(chunk.edges)), coloring, _network_str(chunk), expected, observed
    )


# --- per-claim checkers (top-level so process pools can pickle them) ---


def _check_pfs_bound(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    bound = max(chunk.n - 1, 0)
    out = []
    for cs in chunk.colorings:
        trace = run_with_propagation(base.with_colors(cs), net)
        if trace.pfs_count > bound or not trace.terminated:
            out.append(_cx(chunk, cs, f"terminated with pfs_count <= {bound}",
                           f"pfs_count = {trace.pfs_count}"))
    return out


def _check_monochrome_end(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        final = end_state(run_with_propagation(base.with_colors(cs), net)).colors
        if len(set(final)) > 1:
            out.append(_cx(chunk, cs, "monochrome end state", f"final {list(final)}"))
    return out


def _check_tree_diam(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    diam = chunk.meta
    out = []
    for cs in chunk.colorings:
        trace = run_with_propagation(base.with_colors(cs), net)
        rounds = Counter(ev.pfs_index for ev in trace.events)
        worst = max(rounds.values(), default=0)
        if worst > diam:
            out.append(_cx(chunk, cs, f"every propagating step has <= {diam} rounds",
                           f"one propagating step took {worst} rounds"))
    return out


def _check_acyclic_terminates(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        try:
            trace = run_without_propagation(base.with_colors(cs), net)
        except LimitExceededError:
            out.append(_cx(chunk, cs, "terminates", "hit the step limit"))
            continue
        if isinstance(trace.outcome, NonTerminating):
            out.append(_cx(chunk, cs, "terminates",
                           f"state repeats ({trace.outcome.first_index}, {trace.outcome.repeat_index})"))
    return out


def _check_contract_commute(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        g = base.with_colors(cs)
        direct = end_state(run_with_propagation(g, net)).colors
        cmap = color_contract(g)
        lifted = lift_end_state(end_state(run_with_propagation(cmap.quotient, net)), cmap).colors
        if direct != lifted:
            out.append(_cx(chunk, cs, f"lifted quotient end {list(direct)}", f"got {list(lifted)}"))
    return out


def _check_predict(chunk: _Chunk) -> list[Counterexample]:
    """Classifier soundness and totality: predict must answer and must agree
    with the engine.  Used for the complete and complete-bipartite corpora."""
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        g = base.with_colors(cs)
        pred = predict(g, net)
        final = end_state(run_with_propagation(g, net)).colors
        if pred.color is None:
            out.append(_cx(chunk, cs, "a monochrome prediction", f"Unknown ({pred.basis})"))
        elif set(final) != {pred.color}:
            out.append(_cx(chunk, cs, f"all-{pred.color} ({pred.basis})", f"final {list(final)}"))
    return out


def _check_path_k5(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        pred = classify_path(cs)
        final = end_state(run_with_propagation(base.with_colors(cs), net)).colors
        if set(final) != {pred.color}:
            out.append(_cx(chunk, cs, f"all-{pred.color} ({pred.basis})", f"final {list(final)}"))
    return out


def _check_two_color(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        g = base.with_colors(cs)
        pred = classify_two_color(g)
        final = end_state(run_with_propagation(g, net)).colors
        if set(final) != {pred.color}:
            out.append(_cx(chunk, cs, f"all-{pred.color} ({pred.basis})", f"final {list(final)}"))
    return out


def _check_three_color_conditions(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        g = base.with_colors(cs)
        pred = classify_three_color_conditions(g)
        if pred.color is None:
            continue  # no condition fired; the lemma is silent here
        final = end_state(run_with_propagation(g, net)).colors
        if set(final) != {pred.color}:
            out.append(_cx(chunk, cs, f"all-{pred.color} ({pred.basis})", f"final {list(final)}"))
    return out


def _check_linear_r1(chunk: _Chunk) -> list[Counterexample]:
    base = _chunk_graph(chunk)
    net = _chunk_network(chunk)
    out = []
    for cs in chunk.colorings:
        g = base.with_colors(cs)
        pred = classify_linear_r1(g)
        final = end_state(run_with_propagation(g, net)).colors
        if set(final) != {pred.color}:
            out.append(_cx(chunk, cs, f"all-{pred.color} ({pred.basis})", f"final {list(final)}"))
    return out


# --- corpus builders ---


def _colorings_chunks(skeletons: Iterable[GraphSkeleton], *, contracted: bool = False,
                      all_colors: bool = False, two_color_only: bool = False,
                      meta_fn: Callable[[GraphSkeleton], int] | None = None) -> list[_Chunk]:
    chunks = []
    for skel in skeletons:
        colorings = []
        for cs in enumerate_colorings(skel, _PAL3, all_colors_present=all_colors,
                                      contracted=contracted, budget=None):
            if two_color_only and len(set(cs)) > 2:
                continue
            colorings.append(cs)
        if colorings:
            chunks.append(_Chunk(skel.vertex_count, tuple(sorted(skel.edges)), tuple(colorings),
                                 meta=meta_fn(skel) if meta_fn else None))
    return chunks


def _connected_corpus(n_max: int, **kw) -> list[_Chunk]:
    chunks = []
    for n in range(1, n_max + 1):
        chunks.extend(_colorings_chunks(connected_graphs(n), **kw))
    return chunks


def _random_coloring(rng: random.Random, n: int, palette: Sequence[int]) -> tuple[int, ...]:
    return tuple(rng.choice(palette) for _ in range(n))


def _build_pfs_bound(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    chunks = _connected_corpus(n_max)
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, 10)
        skel = random_connected_graph(rng, n)
        net = random_network(rng, 4)
        pal = tuple(sorted(net.palette))
        cs = _random_coloring(rng, n, pal)
        chunks.append(_Chunk(n, tuple(sorted(skel.edges)), (cs,), pal,
                             tuple((r.source, r.target) for r in net.rules)))
    return chunks


def _build_monochrome_end(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _connected_corpus(n_max)


def _build_tree_diam(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    chunks = []
    for n in range(1, n_max + 1):
        chunks.extend(_colorings_chunks(labeled_trees(n), meta_fn=graph_diameter))
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, 12)
        skel = random_tree(rng, n)
        net = random_network(rng, 4)
        pal = tuple(sorted(net.palette))
        cs = _random_coloring(rng, n, pal)
        chunks.append(_Chunk(n, tuple(sorted(skel.edges)), (cs,), pal,
                             tuple((r.source, r.target) for r in net.rules),
                             meta=graph_diameter(skel)))
    return chunks


def _build_acyclic_terminates(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    rng = random.Random(seed)
    chunks = []
    for _ in range(samples):
        n = rng.randint(1, n_max)
        skel = random_connected_graph(rng, n)
        net = random_network(rng, 4, acyclic=True)
        pal = tuple(sorted(net.palette))
        cs = _random_coloring(rng, n, pal)
        chunks.append(_Chunk(n, tuple(sorted(skel.edges)), (cs,), pal,
                             tuple((r.source, r.target) for r in net.rules)))
    return chunks


def _build_contract_commute(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _connected_corpus(n_max)


def _build_kn_all3(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _colorings_chunks(generate_family("complete", n=n) for n in range(3, n_max + 1))


def _build_kmn(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    pairs = [(m, n) for m in range(1, n_max + 1) for n in range(m, n_max + 1)]
    return _colorings_chunks(generate_family("complete_bipartite", m=m, n=n) for m, n in pairs)


def _build_path_k5(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _colorings_chunks((generate_family("path", n=k) for k in range(1, 6)), contracted=True)


def _build_two_color(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _connected_corpus(n_max, two_color_only=True)


def _build_three_color_conditions(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    return _connected_corpus(n_max, contracted=True, all_colors=True)


def _build_linear_r1(n_max: int, samples: int, seed: int) -> list[_Chunk]:
    rng = random.Random(seed)
    chunks = []
    for _ in range(samples):
        n = rng.randint(1, n_max)
        skel = random_connected_graph(rng, n)
        cs = _random_coloring(rng, n, _PAL3)
        chunks.append(_Chunk(n, tuple(sorted(skel.edges)), (cs,), _PAL3, _RULES_R1))
    return chunks


@dataclass(frozen=True)
class _Claim:
    builder: Callable[[int, int, int], list[_Chunk]]
    checker: Callable[[_Chunk], list[Counterexample]]
    n_max: int
    samples: int
    random: bool  # whether the corpus has a seeded part


CLAIMS: dict[str, _Claim] = {
    # propagating-step count never reaches the vertex count
    "pfs-bound": _Claim(_build_pfs_bound, _check_pfs_bound, 5, 100_000, True),
    # cyclic network on a connected graph always ends monochrome
    "monochrome-end": _Claim(_build_monochrome_end, _check_monochrome_end, 5, 0, False),
    # on a tree no propagating step outlives the diameter
    "tree-diam": _Claim(_build_tree_diam, _check_tree_diam, 6, 10_000, True),
    # acyclic rule digraphs terminate even without propagation
    "acyclic-terminates": _Claim(_build_acyclic_terminates, _check_acyclic_terminates, 8, 10_000, True),
    # contraction commutes with running to the end state
    "contract-commute": _Claim(_build_contract_commute, _check_contract_commute, 5, 0, False),
    # complete graphs with all three colors end all-3
    "kn-all3": _Claim(_build_kn_all3, _check_predict, 6, 0, False),
    # complete bipartite prediction (all-3 part => all-1, else all-3)
    "kmn": _Claim(_build_kmn, _check_predict, 3, 0, False),
    # the five-case path characterization for k <= 5
    "path-k5": _Claim(_build_path_k5, _check_path_k5, 5, 0, False),
    # two-color end states (1,2)->1, (2,3)->2, (1,3)->3
    "two-color": _Claim(_build_two_color, _check_two_color, 5, 0, False),
    # the three sufficient conditions on contracted graphs
    "three-color-conditions": _Claim(_build_three_color_conditions, _check_three_color_conditions, 5, 0, False),
    # linear network: least color present wins
    "linear-r1": _Claim(_build_linear_r1, _check_linear_r1, 8, 10_000, True),
}


def _run_chunks(chunks: list[_Chunk], checker: Callable[[_Chunk], list[Counterexample]],
                workers: int) -> list[Counterexample]:
    if workers <= 1 or len(chunks) < 2:
        return [cx for batch in map(checker, chunks) for cx in batch]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        batches = pool.map(checker, chunks, chunksize=max(1, len(chunks) // (workers * 8)))
        return [cx for batch in batches for cx in batch]


def verify_claim(
    claim_id: str,
    *,
    n_max: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    budget: int | None = DEFAULT_BUDGET,
    workers: int = 1,
) -> VerificationReport:
    """Check one registered claim and report instance count, counterexamples
    (in corpus order, independent of scheduling), and timing."""
    if claim_id not in CLAIMS:
        raise UnknownClaimError(f"unknown claim {claim_id!r}; known: {', '.join(sorted(CLAIMS))}")
    claim = CLAIMS[claim_id]
    n_max = claim.n_max if n_max is None else n_max
    samples = claim.samples if samples is None else samples
    start = time.perf_counter()
    chunks = claim.builder(n_max, samples, seed)
    total = sum(len(c.colorings) for c in chunks)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"corpus of {total} instances exceeds budget {budget}")
    counterexamples = _run_chunks(chunks, claim.checker, workers)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(
        claim_id, total, tuple(counterexamples), elapsed_ms,
        seed if claim.random and samples else None,
    )


# --- extremal search ---


@dataclass(frozen=True)
class ExtremalInstance:
    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: tuple[int, ...]
    pfs_count: int


@dataclass(frozen=True)
class SearchResult:
    instances: tuple[ExtremalInstance, ...]
    checked: int
    exhaustive: bool
    truncated: bool
    seed: int | None = None


def _search_chunk(item: tuple) -> tuple[int, list[ExtremalInstance]]:
    n, edges, colorings, palette, rules = item
    base = ColoredGraph(n, frozenset(edges), tuple([0] * n))
    net = ForcingNetwork(frozenset(palette), tuple(Rule(s, t) for s, t in rules))
    hits = []
    for cs in colorings:
        trace = run_with_propagation(base.with_colors(cs), net)
        if trace.pfs_count == n - 1:
            hits.append(ExtremalInstance(n, edges, cs, trace.pfs_count))
    return len(colorings), hits


def search_extremal(
    n: int,
    network: ForcingNetwork,
    *,
    budget: int | None = DEFAULT_BUDGET,
    seed: int = 0,
    workers: int = 1,
) -> SearchResult:
    """All instances on n vertices whose run needs the maximum n-1 propagating
    steps.  Exhaustive over connected graphs up to n = 6 (truncated if the
    budget runs out, flagged); seeded sampling beyond that."""
    if n < 1:
        raise InvalidParamsError("n >= 1")
    pal = tuple(sorted(network.palette))
    rules = tuple((r.source, r.target) for r in network.rules)
    items: list[tuple] = []
    truncated = False
    used_seed: int | None = None
    if n <= 6:
        exhaustive = True
        left = budget if budget is not None else None
        for skel in connected_graphs(n):
            colorings = tuple(enumerate_colorings(skel, pal, budget=None))
            if left is not None:
                if left <= 0:
                    truncated = True
                    break
                if len(colorings) > left:
                    colorings = colorings[:left]
                    truncated = True
                left -= len(colorings)
            items.append((n, tuple(sorted(skel.edges)), colorings, pal, rules))
    else:
        exhaustive = False
        used_seed = seed
        rng = random.Random(seed)
        count = budget if budget is not None else DEFAULT_BUDGET
        for _ in range(count):
            skel = random_connected_graph(rng, n)
            cs = _random_coloring(rng, n, pal)
            items.append((n, tuple(sorted(skel.edges)), (cs,), pal, rules))
    if workers <= 1 or len(items) < 2:
        results = list(map(_search_chunk, items))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_chunk, items, chunksize=max(1, len(items) // (workers * 8))))
    checked = sum(r[0] for r in results)
    hits = tuple(hit for r in results for hit in r[1])
    return SearchResult(hits, checked, exhaustive, truncated, used_seed)


def graph_diameter(graph: GraphSkeleton | ColoredGraph) -> int:
    """Longest shortest path; Disconnected if the graph is not connected."""
    n = graph.vertex_count
    if n < 1:
        raise InvalidParamsError("diameter needs at least one vertex")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for start in range(n):
        dist = [-1] * n
        dist[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if dist[u] == -1:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        far = max(dist)
        if min(dist) == -1:
            raise DisconnectedError("graph is not connected")
        best = max(best, far)
    return best
