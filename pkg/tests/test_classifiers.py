"""End-state classifiers for the cyclic three-color network, checked against
the engine wherever the claim is decidable by brute force."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import multiforce as mf
from multiforce import errors
from multiforce.classifiers import (
    classify_complete,
    classify_complete_bipartite,
    classify_linear_r1,
    classify_path,
    classify_three_color_conditions,
    classify_two_color,
    predict,
)

from conftest import colored_graphs, cycle_edges, path_edges, run_end

NET = mf.CYCLIC3


def graph(n, edges, colors, net=NET):
    return mf.validate_colored_graph(n, edges, colors, net)


def mono(pred):
    assert pred.is_monochrome
    return pred.color


class TestTwoColor:
    def test_pairs(self):
        assert mono(classify_two_color(graph(3, path_edges(3), [1, 2, 1]))) == 1
        assert mono(classify_two_color(graph(4, cycle_edges(4), [1, 3, 1, 3]))) == 3
        assert mono(classify_two_color(graph(2, [(0, 1)], [2, 3]))) == 2

    def test_monochrome_input(self):
        pred = classify_two_color(graph(3, path_edges(3), [2, 2, 2]))
        assert mono(pred) == 2
        assert pred.basis == "monochrome"

    def test_three_colors_rejected(self):
        with pytest.raises(errors.ThreeColorsPresentError):
            classify_two_color(graph(3, path_edges(3), [1, 2, 3]))

    @given(colored_graphs(max_n=5, connected=True, palette=(1, 2)))
    @settings(deadline=None)
    def test_agrees_with_engine_on_12(self, ge):
        n, edges, colors = ge
        assert run_end(n, edges, colors) == (mono(classify_two_color(graph(n, edges, colors))),) * n


class TestThreeColorConditions:
    def test_case_1(self):
        pred = classify_three_color_conditions(graph(4, path_edges(4), [1, 3, 2, 3]))
        assert mono(pred) == 1 and pred.basis == "three-color lemma case 1"

    def test_case_2(self):
        pred = classify_three_color_conditions(graph(3, cycle_edges(3), [1, 2, 3]))
        assert mono(pred) == 3 and pred.basis == "three-color lemma case 2"

    def test_case_3(self):
        # a path with the lone 2 stranded next to a 3
        pred = classify_three_color_conditions(graph(4, path_edges(4), [2, 3, 1, 3]))
        assert mono(pred) == 2 and pred.basis == "three-color lemma case 3"

    def test_unknown_when_nothing_fires(self):
        pred = classify_three_color_conditions(graph(5, path_edges(5), [2, 3, 1, 2, 3]))
        assert not pred.is_monochrome

    def test_not_contracted(self):
        with pytest.raises(errors.NotContractedError):
            classify_three_color_conditions(graph(4, path_edges(4), [1, 1, 2, 3]))

    def test_missing_color(self):
        with pytest.raises(errors.MissingColorError):
            classify_three_color_conditions(graph(2, [(0, 1)], [1, 2]))

    def test_conditions_never_conflict_small_exhaustive(self):
        # on contracted inputs at most one condition can hold, n <= 4
        for n in range(3, 5):
            pairs = list(itertools.combinations(range(n), 2))
            for bits in range(1 << len(pairs)):
                edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
                for colors in itertools.product((1, 2, 3), repeat=n):
                    if {1, 2, 3} - set(colors):
                        continue
                    if any(colors[u] == colors[v] for u, v in edges):
                        continue
                    g = graph(n, edges, list(colors))
                    if not mf.is_connected(g):
                        continue
                    cs = colors
                    nbrs = g.neighbors
                    c1 = all(
                        any(cs[u] == 2 and all(cs[w] == 3 for w in nbrs[u]) for u in nbrs[v])
                        for v in range(n) if cs[v] == 3
                    )
                    c2 = all(
                        any(cs[u] == 1 for u in nbrs[v]) for v in range(n) if cs[v] == 2
                    )
                    c3 = all(
                        any(cs[u] == 3 and all(cs[w] == 1 for w in nbrs[u]) for u in nbrs[v])
                        for v in range(n) if cs[v] == 1
                    ) and not c2
                    assert c1 + c2 + c3 <= 1, (edges, colors)


class TestComplete:
    def test_examples(self):
        assert mono(classify_complete(graph(3, cycle_edges(3), [3, 2, 1]))) == 3
        k4 = list(itertools.combinations(range(4), 2))
        assert mono(classify_complete(graph(4, k4, [1, 2, 3, 3]))) == 3

    def test_missing_color_falls_back_to_two_color(self):
        k4 = list(itertools.combinations(range(4), 2))
        g = graph(4, k4, [1, 2, 1, 2])
        with pytest.raises(errors.MissingColorError):
            classify_complete(g)
        assert mono(classify_two_color(g)) == 1

    def test_not_complete(self):
        with pytest.raises(errors.NotCompleteError):
            classify_complete(graph(3, path_edges(3), [1, 2, 3]))


def kmn_edges(m, n):
    return [(a, m + b) for a in range(m) for b in range(n)]


class TestCompleteBipartite:
    def test_one_part_all_three(self):
        g = graph(4, kmn_edges(2, 2), [3, 3, 1, 2])
        assert mono(classify_complete_bipartite(g, [0, 1], [2, 3])) == 1

    def test_mixed_parts(self):
        g = graph(4, kmn_edges(1, 3), [1, 2, 3, 3])
        assert mono(classify_complete_bipartite(g, [0], [1, 2, 3])) == 3
        g33 = graph(6, kmn_edges(3, 3), [1, 2, 3, 1, 2, 3])
        assert mono(classify_complete_bipartite(g33, [0, 1, 2], [3, 4, 5])) == 3

    def test_bad_partition(self):
        g = graph(4, kmn_edges(2, 2), [3, 3, 1, 2])
        with pytest.raises(errors.NotCompleteBipartiteError):
            classify_complete_bipartite(g, [0, 2], [1, 3])
        with pytest.raises(errors.NotCompleteBipartiteError):
            classify_complete_bipartite(g, [0, 1, 2, 3], [])

    def test_missing_cross_edge(self):
        g = graph(4, kmn_edges(2, 2)[:-1], [3, 3, 1, 2])
        with pytest.raises(errors.NotCompleteBipartiteError):
            classify_complete_bipartite(g, [0, 1], [2, 3])

    def test_missing_color(self):
        g = graph(4, kmn_edges(2, 2), [3, 3, 1, 1])
        with pytest.raises(errors.MissingColorError):
            classify_complete_bipartite(g, [0, 1], [2, 3])


class TestPath:
    @pytest.mark.parametrize("seq,winner,case", [
        ((1, 3, 2, 3), 1, 1),
        ((3, 2, 3, 1, 3), 2, 1),
        ((1, 3, 1, 2, 1), 3, 2),
        ((1, 3, 1, 2), 3, 2),  # a 2 beside a 1 flips the stated all-2 outcome
        ((1, 3, 1, 3, 2), 2, 2),
        ((2, 3, 1, 3, 1), 2, 2),
        ((1, 2, 3, 2, 1), 3, 3),
        ((2, 1, 3), 3, 3),
        ((2, 3, 1), 1, 4),
        ((2, 3, 1, 3), 2, 4),
        ((2, 3, 1, 3, 2), 1, 4),
        ((2, 3, 2, 1), 1, 5),
        ((2, 3, 2, 1, 3), 2, 5),
        ((3, 1, 2, 3, 2), 2, 5),
    ])
    def test_case_table(self, seq, winner, case):
        pred = classify_path(seq)
        assert mono(pred) == winner
        assert pred.basis == f"path theorem case {case}"

    def test_short_sequences(self):
        assert mono(classify_path((2,))) == 2
        assert mono(classify_path((1, 2))) == 1
        assert classify_path((3, 1)).basis == "two-color lemma"

    def test_too_long(self):
        with pytest.raises(errors.PathTooLongError):
            classify_path((1, 2, 3, 1, 2, 3))

    def test_not_contracted(self):
        with pytest.raises(errors.NotContractedError):
            classify_path((1, 1, 2))

    def test_empty_and_bad_colors(self):
        with pytest.raises(ValueError):
            classify_path(())
        with pytest.raises(ValueError):
            classify_path((1, 4))

    def test_every_contracted_sequence_matches_engine(self):
        checked = 0
        for k in range(1, 6):
            for seq in itertools.product((1, 2, 3), repeat=k):
                if any(seq[i] == seq[i + 1] for i in range(k - 1)):
                    continue
                end = run_end(k, path_edges(k), list(seq))
                assert end == (mono(classify_path(seq)),) * k, seq
                checked += 1
        assert checked == 93  # 3 + 6 + 12 + 24 + 48 contracted sequences

    def test_reversal_symmetry(self):
        for k in range(1, 6):
            for seq in itertools.product((1, 2, 3), repeat=k):
                if any(seq[i] == seq[i + 1] for i in range(k - 1)):
                    continue
                assert classify_path(seq).color == classify_path(seq[::-1]).color


class TestLinearR1:
    def test_least_color_present_wins(self):
        assert mono(classify_linear_r1(graph(3, path_edges(3), [3, 2, 3]))) == 2
        assert mono(classify_linear_r1(graph(3, path_edges(3), [3, 3, 3]))) == 3
        assert mono(classify_linear_r1(graph(4, path_edges(4), [2, 1, 3, 2]))) == 1

    def test_agrees_with_engine_exhaustively_small(self):
        for n in range(1, 4):
            for colors in itertools.product((1, 2, 3), repeat=n):
                end = run_end(n, path_edges(n), list(colors), mf.LINEAR_R1)
                assert end == (mono(classify_linear_r1(graph(n, path_edges(n), list(colors)))),) * n

    def test_end_state_ignores_rule_order(self):
        # any ordering of the three rules reaches the same end state
        for perm in itertools.permutations([(1, 2), (2, 3), (1, 3)]):
            net = mf.validate_network([1, 2, 3], list(perm))
            for colors in itertools.product((1, 2, 3), repeat=3):
                assert run_end(3, path_edges(3), list(colors), net) == \
                    run_end(3, path_edges(3), list(colors), mf.LINEAR_R1)


class TestPredict:
    def test_known_families(self):
        assert mono(predict(graph(3, cycle_edges(3), [1, 2, 3]), NET)) == 3
        assert mono(predict(graph(6, cycle_edges(6), [1, 3, 3, 2, 2, 1]), NET)) == 3
        assert mono(predict(graph(4, kmn_edges(2, 2), [3, 3, 1, 2]), NET)) == 1
        assert mono(predict(graph(5, path_edges(5), [1, 3, 1, 2, 1]), NET)) == 3

    def test_unknown_on_long_path(self):
        pred = predict(graph(7, path_edges(7), [2, 3, 1, 2, 3, 2, 1]), NET)
        assert not pred.is_monochrome

    def test_monochrome_shortcut_beats_connectivity(self):
        pred = predict(graph(4, [(0, 1)], [2, 2, 2, 2]), NET)
        assert mono(pred) == 2

    def test_disconnected_three_color_is_unknown(self):
        pred = predict(graph(4, [(0, 1)], [1, 2, 3, 3]), NET)
        assert not pred.is_monochrome
        assert "connected" in pred.basis

    def test_empty_graph_is_unknown(self):
        assert not predict(graph(0, [], []), NET).is_monochrome

    def test_unsupported_network(self):
        net = mf.validate_network([1, 2, 3], [(1, 2), (2, 3)])
        with pytest.raises(errors.UnsupportedNetworkError):
            predict(graph(4, path_edges(4), [1, 2, 1, 3], net), net)

    def test_r1_by_set_match(self):
        shuffled = mf.validate_network([1, 2, 3], [(2, 3), (1, 3), (1, 2)])
        assert mono(predict(graph(3, path_edges(3), [3, 2, 3]), shuffled)) == 2

    def test_cyclic_matches_rotations_but_not_reorders(self):
        rotated = mf.validate_network([1, 2, 3], [(2, 3), (3, 1), (1, 2)])
        assert mono(predict(graph(3, path_edges(3), [2, 3, 1]), rotated)) == 1
        # same rule set, different cyclic order: genuinely different dynamics
        reordered = mf.validate_network([1, 2, 3], [(1, 2), (3, 1), (2, 3)])
        assert run_end(3, path_edges(3), [2, 3, 1], reordered) == (2, 2, 2)
        assert run_end(3, path_edges(3), [2, 3, 1]) == (1, 1, 1)
        with pytest.raises(errors.UnsupportedNetworkError):
            predict(graph(3, path_edges(3), [2, 3, 1], reordered), reordered)

    @given(st.permutations([1, 2, 3]))
    def test_renamed_palette_gives_renamed_prediction(self, perm):
        sigma = {1: perm[0], 2: perm[1], 3: perm[2]}
        net = mf.validate_network(
            [sigma[1], sigma[2], sigma[3]],
            [(sigma[1], sigma[2]), (sigma[2], sigma[3]), (sigma[3], sigma[1])],
        )
        base = [1, 3, 1, 2, 1]
        renamed = [sigma[c] for c in base]
        pred = predict(graph(5, path_edges(5), renamed, net), net)
        assert mono(pred) == sigma[3]

    @given(st.permutations([4, 9, 7]))
    def test_arbitrary_palette_names(self, palette):
        a, b, c = palette
        net = mf.validate_network([a, b, c], [(a, b), (b, c), (c, a)])
        g = mf.validate_colored_graph(3, cycle_edges(3), [a, b, c], net)
        assert mono(predict(g, net)) == c  # triangle showing all colors

    @given(colored_graphs(max_n=5, connected=True))
    @settings(deadline=None)
    def test_never_wrong_when_monochrome(self, ge):
        n, edges, colors = ge
        pred = predict(graph(n, edges, colors), NET)
        if pred.is_monochrome:
            assert run_end(n, edges, colors) == (pred.color,) * n
