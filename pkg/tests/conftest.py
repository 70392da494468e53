import itertools

from hypothesis import strategies as st

import multiforce as mf


def path_edges(k):
    return [(i, i + 1) for i in range(k - 1)]


def cycle_edges(k):
    return path_edges(k) + [(0, k - 1)]


def run_end(n, edges, colors, network=mf.CYCLIC3):
    g = mf.validate_colored_graph(n, edges, colors, network)
    return mf.end_state(mf.run_with_propagation(g, network)).colors


@st.composite
def colored_graphs(draw, max_n=6, connected=False, palette=(1, 2, 3)):
    """(n, edges, colors) with edges drawn per-pair; a random spanning
    arrangement is forced in when connected=True."""
    n = draw(st.integers(min_value=1 if not connected else 1, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picked = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs)) if pairs else st.just(set()))
    edges = set(picked)
    if connected and n > 1:
        order = draw(st.permutations(range(n)))
        for i in range(1, n):
            a = order[i]
            b = order[draw(st.integers(min_value=0, max_value=i - 1))]
            edges.add((min(a, b), max(a, b)))
    colors = draw(st.lists(st.sampled_from(palette), min_size=n, max_size=n))
    return n, sorted(edges), tuple(colors)
