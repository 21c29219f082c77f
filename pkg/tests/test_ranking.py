from __future__ import annotations

from dataclasses import replace
from itertools import combinations

import numpy as np
import pytest

from oracles import random_weighted_graph, textrank_power_iteration
from reviewgraph.errors import ContractViolation
from reviewgraph.graph import SimilarityGraph, louvain
from reviewgraph.ranking import CorrelationScores, tag_communities, textrank


def complete_graph(n: int, weight: float = 1.0) -> SimilarityGraph:
    nodes = tuple((i, 0) for i in range(n))
    edges = tuple(((a, 0), (b, 0), weight) for a, b in combinations(range(n), 2))
    return SimilarityGraph(nodes, edges, 0.5)


def path_graph() -> SimilarityGraph:
    return SimilarityGraph(
        nodes=((0, 0), (1, 0), (2, 0)),
        edges=(((0, 0), (1, 0), 1.0), ((1, 0), (2, 0), 1.0)),
        tau=0.5,
    )


class TestTextrank:
    def test_uniform_complete_graph_scores_equal(self):
        scores = textrank(complete_graph(6))
        values = list(scores.score.values())
        assert max(values) - min(values) < 1e-6
        assert scores.converged

    def test_isolated_node_score(self):
        g = SimilarityGraph(((0, 0), (1, 0), (2, 0)), (((0, 0), (1, 0), 0.9),), 0.5)
        scores = textrank(g, damping=0.85)
        assert scores.score[(2, 0)] == pytest.approx(0.15, abs=1e-9)

    def test_path_center_dominates_and_matches_oracle(self):
        g = path_graph()
        scores = textrank(g)
        assert scores.score[(1, 0)] > scores.score[(0, 0)]
        assert scores.score[(0, 0)] == pytest.approx(scores.score[(2, 0)], abs=1e-12)
        oracle = textrank_power_iteration(g, damping=0.85)
        for node in g.nodes:
            assert scores.score[node] == pytest.approx(oracle[node], abs=1e-6)

    def test_oracle_agreement_on_random_graphs(self):
        rng = np.random.Generator(np.random.PCG64(31))
        for _ in range(10):
            g = random_weighted_graph(rng)
            scores = textrank(g)
            oracle = textrank_power_iteration(g, damping=0.85)
            for node in g.nodes:
                assert scores.score[node] == pytest.approx(oracle[node], abs=1e-6)

    def test_score_bounds(self):
        rng = np.random.Generator(np.random.PCG64(37))
        for _ in range(20):
            g = random_weighted_graph(rng)
            scores = textrank(g, damping=0.85)
            n = len(g.nodes)
            for value in scores.score.values():
                assert 0.15 - 1e-9 <= value <= n + 1e-9

    def test_converges_on_random_graphs(self):
        rng = np.random.Generator(np.random.PCG64(41))
        for _ in range(100):
            g = random_weighted_graph(rng)
            assert textrank(g).converged

    def test_non_convergence_reported_not_raised(self):
        scores = textrank(path_graph(), max_iter=1)
        assert not scores.converged
        assert scores.iterations_used == 1

    def test_weight_scaling_leaves_fixed_point_unchanged(self):
        g = path_graph()
        base = textrank(g)
        scaled = textrank(replace(g, edges=tuple((a, b, w * 7.5) for a, b, w in g.edges)))
        for node in g.nodes:
            assert scaled.score[node] == pytest.approx(base.score[node], abs=1e-9)

    def test_parameter_validation(self):
        g = path_graph()
        with pytest.raises(ContractViolation):
            textrank(g, damping=1.0)
        with pytest.raises(ContractViolation):
            textrank(g, tol=0.0)
        with pytest.raises(ContractViolation):
            textrank(SimilarityGraph((), (), 0.5))


class TestTagCommunities:
    def test_single_member_community_tags_itself(self):
        g = SimilarityGraph(((0, 0), (1, 0)), (((0, 0), (1, 0), 0.9),), 0.5)
        scores = textrank(g)
        part = louvain(g, seed=0)
        texts = {(0, 0): "first", (1, 0): "second"}
        tags = tag_communities(g, part, scores, texts)
        assert len(tags) == 1
        assert tags[0].member_count == 2

    def test_argmax_member_tags_community(self):
        g = path_graph()
        scores = textrank(g)
        part = louvain(g, seed=0)
        texts = {node: f"text {node}" for node in g.nodes}
        tags = tag_communities(g, part, scores, texts)
        # centre of the path has the strictly greatest score
        assert tags[0].tag_sentence == (1, 0)
        assert tags[0].tag_text == "text (1, 0)"

    def test_tie_breaks_to_smallest_ref(self):
        g = SimilarityGraph(((0, 0), (2, 0)), (((0, 0), (2, 0), 0.9),), 0.5)
        scores = textrank(g)  # symmetric pair: equal scores
        part = louvain(g, seed=0)
        tags = tag_communities(g, part, scores, {(0, 0): "a", (2, 0) : "b"})
        assert tags[0].tag_sentence == (0, 0)

    def test_isolated_singletons_skipped(self):
        g = SimilarityGraph(((0, 0), (1, 0), (5, 5)), (((0, 0), (1, 0), 0.9),), 0.5)
        scores = textrank(g)
        part = louvain(g, seed=0)
        texts = {node: "t" for node in g.nodes}
        tags = tag_communities(g, part, scores, texts)
        assert all(t.tag_sentence != (5, 5) for t in tags)
        assert len(tags) == 1

    def test_sorted_by_member_count_descending(self):
        from oracles import partition_blocks  # noqa: F401  (documentation import)
        edges = []
        for a, b in combinations(range(4), 2):
            edges.append(((a, 0), (b, 0), 1.0))
        edges.append(((4, 0), (5, 0), 1.0))
        g = SimilarityGraph(tuple((i, 0) for i in range(6)), tuple(edges), 0.5)
        scores = textrank(g)
        part = louvain(g, seed=0)
        texts = {node: "t" for node in g.nodes}
        tags = tag_communities(g, part, scores, texts)
        assert [t.member_count for t in tags] == [4, 2]

    def test_tag_membership_invariant(self):
        rng = np.random.Generator(np.random.PCG64(43))
        for trial in range(10):
            g = random_weighted_graph(rng)
            part = louvain(g, seed=trial)
            scores = textrank(g)
            texts = {node: "t" for node in g.nodes}
            members = part.communities()
            for tag in tag_communities(g, part, scores, texts):
                assert tag.tag_sentence in members[tag.community_id]
                assert tag.member_count == len(members[tag.community_id])

    def test_scores_must_cover_partition(self):
        g = path_graph()
        part = louvain(g, seed=0)
        partial = CorrelationScores({(0, 0): 1.0}, 0.85, 1, True)
        with pytest.raises(ContractViolation):
            tag_communities(g, part, partial, {n: "t" for n in g.nodes})
