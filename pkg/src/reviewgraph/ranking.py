"""Correlation scores over the similarity graph, and community tags.

Each sentence receives a damped random-walk centrality ("correlation
score"): a sentence scores highly when many high-scoring sentences link
to it with strong weights.  The recurrence, iterated from a uniform start
of 1 until the largest per-node change drops below ``tol``:

    C_j = (1 - damping) + damping * sum_{k in adj(j)} w_jk / S_k * C_k

with S_k the strength (incident weight sum) of node k.  Isolated nodes
converge to ``1 - damping``.  Scores are computed on the whole graph, not
per community, so a tag reflects how well its sentence represents the
corpus-wide neighbourhood it sits in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation
from .graph import Partition, Ref, SimilarityGraph

DEFAULT_DAMPING = 0.85
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class CorrelationScores:
    score: dict[Ref, float]
    damping: float
    iterations_used: int
    converged: bool


@dataclass(frozen=True)
class CommunityTag:
    community_id: int
    tag_sentence: Ref
    tag_text: str
    member_count: int


def textrank(graph: SimilarityGraph, damping: float = DEFAULT_DAMPING,
             tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> CorrelationScores:
    """Fixed-point iteration of the weighted correlation-score recurrence.

    Synchronous (two-buffer) updates: every iteration reads only the
    previous iteration's scores.  Non-convergence within ``max_iter`` is
    reported through ``converged=False`` rather than raised.
    """
    if not graph.nodes:
        raise ContractViolation("graph has no nodes")
    if not 0.0 < damping < 1.0:
        raise ContractViolation(f"damping must be in (0, 1), got {damping}")
    if tol <= 0.0:
        raise ContractViolation(f"tol must be positive, got {tol}")

    nodes = list(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)

    rows, cols, vals = [], [], []
    for a, b, w in graph.edges:
        ia, ib = index[a], index[b]
        rows.extend((ia, ib))
        cols.extend((ib, ia))
        vals.extend((w, w))
    weights = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

    strength = np.asarray(weights.sum(axis=1)).ravel()
    inv_strength = np.divide(1.0, strength, out=np.zeros(n), where=strength > 0)

    scores = np.ones(n)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        updated = (1.0 - damping) + damping * (weights @ (scores * inv_strength))
        delta = float(np.max(np.abs(updated - scores)))
        scores = updated
        if delta < tol:
            converged = True
            break

    return CorrelationScores(
        score={node: float(scores[i]) for node, i in index.items()},
        damping=damping,
        iterations_used=iterations,
        converged=converged,
    )


def tag_communities(graph: SimilarityGraph, partition: Partition,
                    scores: CorrelationScores,
                    texts: dict[Ref, str]) -> list[CommunityTag]:
    """Tag each community with its highest-scoring member sentence.

    Singleton communities consisting of an isolated node are skipped (they
    carry no similarity information); singleton communities of connected
    nodes are tagged by their only member.  Ties on the score break toward
    the smallest (review_index, sentence_index).  Output is sorted by
    community size, largest first.
    """
    node_set = set(partition.assignment)
    if node_set - set(scores.score):
        missing = sorted(node_set - set(scores.score))[0]
        raise ContractViolation(f"scores do not cover node {missing}")

    isolated = set(graph.isolated_nodes())
    tags: list[CommunityTag] = []
    for cid, members in partition.communities().items():
        if len(members) == 1 and members[0] in isolated:
            continue
        tag = min(members, key=lambda node: (-scores.score[node], node))
        tags.append(CommunityTag(cid, tag, texts[tag], len(members)))

    tags.sort(key=lambda t: (-t.member_count, t.tag_sentence))
    return tags
