import json

import pytest

import multiforce as mf
from multiforce import errors
from multiforce.lab import CLAIMS, graph_diameter, search_extremal, verify_claim

from conftest import cycle_edges, path_edges


def graph(n, edges, colors):
    return mf.validate_colored_graph(n, edges, colors, mf.CYCLIC3)


class TestGraphDiameter:
    def test_values(self):
        assert graph_diameter(graph(4, path_edges(4), [1] * 4)) == 3
        assert graph_diameter(graph(4, cycle_edges(4), [1] * 4)) == 2
        assert graph_diameter(graph(1, [], [1])) == 0
        star = [(0, i) for i in range(1, 5)]
        assert graph_diameter(graph(5, star, [1] * 5)) == 2

    def test_disconnected(self):
        with pytest.raises(errors.DisconnectedError):
            graph_diameter(graph(3, [(0, 1)], [1, 1, 1]))

    def test_empty(self):
        with pytest.raises(errors.InvalidParamsError):
            graph_diameter(graph(0, [], []))


class TestVerifyClaim:
    def test_unknown_claim(self):
        with pytest.raises(errors.UnknownClaimError):
            verify_claim("perpetual-motion")

    def test_registry_is_complete(self):
        assert set(CLAIMS) == {
            "pfs-bound", "monochrome-end", "tree-diam", "acyclic-terminates",
            "contract-commute", "kn-all3", "kmn", "path-k5", "two-color",
            "three-color-conditions", "linear-r1",
        }

    def test_budget_guard(self):
        with pytest.raises(errors.BudgetExceededError):
            verify_claim("pfs-bound", n_max=5, samples=0, budget=10)

    @pytest.mark.parametrize("claim,kwargs", [
        ("pfs-bound", {"n_max": 3, "samples": 50}),
        ("monochrome-end", {"n_max": 3}),
        ("tree-diam", {"n_max": 4, "samples": 25}),
        ("acyclic-terminates", {"n_max": 4, "samples": 50}),
        ("contract-commute", {"n_max": 3}),
        ("kn-all3", {"n_max": 4}),
        ("kmn", {"n_max": 2}),
        ("path-k5", {}),
        ("two-color", {"n_max": 3}),
        ("three-color-conditions", {"n_max": 4}),
        ("linear-r1", {"samples": 60}),
    ])
    def test_claims_hold_on_small_corpora(self, claim, kwargs):
        report = verify_claim(claim, **kwargs)
        assert report.ok, report.counterexamples[:2]
        assert report.instances_checked > 0
        assert report.claim_id == claim

    def test_path_corpus_size(self):
        assert verify_claim("path-k5").instances_checked == 93

    def test_seed_recorded_only_for_sampled_corpora(self):
        assert verify_claim("path-k5").seed is None
        assert verify_claim("pfs-bound", n_max=2, samples=5, seed=11).seed == 11

    def test_worker_count_does_not_change_the_report(self):
        one = verify_claim("path-k5", workers=1).as_document()
        many = verify_claim("path-k5", workers=2).as_document()
        one["elapsed_ms"] = many["elapsed_ms"] = 0
        assert json.dumps(one) == json.dumps(many)

    def test_report_document_shape(self):
        doc = verify_claim("kmn", n_max=2).as_document()
        assert list(doc) == ["claim_id", "instances_checked", "counterexamples", "elapsed_ms"]
        assert doc["counterexamples"] == []
        assert isinstance(doc["elapsed_ms"], int)

    def test_repeat_runs_identical(self):
        a = verify_claim("two-color", n_max=3)
        b = verify_claim("two-color", n_max=3)
        assert a.instances_checked == b.instances_checked
        assert a.counterexamples == b.counterexamples


class TestSearchExtremal:
    def test_n3_exhaustive_includes_the_path(self):
        res = search_extremal(3, mf.CYCLIC3)
        assert res.exhaustive and not res.truncated and res.seed is None
        assert res.checked == 4 * 27
        found = {(inst.edges, inst.coloring) for inst in res.instances}
        assert (((0, 1), (1, 2)), (1, 2, 3)) in found
        for inst in res.instances:
            tr = mf.run_with_propagation(graph(3, list(inst.edges), list(inst.coloring)), mf.CYCLIC3)
            assert tr.pfs_count == 2 == inst.pfs_count

    def test_n2(self):
        res = search_extremal(2, mf.CYCLIC3)
        assert {inst.coloring for inst in res.instances} == {(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)}

    def test_budget_truncates_deterministically(self):
        small = search_extremal(3, mf.CYCLIC3, budget=50)
        again = search_extremal(3, mf.CYCLIC3, budget=50)
        assert small.truncated and small.checked == 50
        assert small.instances == again.instances

    def test_sampling_above_exhaustive_range(self):
        res = search_extremal(7, mf.CYCLIC3, budget=60, seed=4)
        assert not res.exhaustive
        assert res.seed == 4 and res.checked == 60
        for inst in res.instances:
            tr = mf.run_with_propagation(graph(7, list(inst.edges), list(inst.coloring)), mf.CYCLIC3)
            assert tr.pfs_count == 6

    def test_instances_are_sorted_and_unique(self):
        res = search_extremal(3, mf.CYCLIC3)
        seen = [(inst.edges, inst.coloring) for inst in res.instances]
        assert len(set(seen)) == len(seen)
