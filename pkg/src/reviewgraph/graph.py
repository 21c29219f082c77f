"""Thresholded similarity graph and Louvain community detection.

Sentences are nodes; an undirected edge carries the similarity of its two
sentences and exists only when that similarity is *strictly* above the
threshold tau.  Communities are found by greedy modularity maximization:

    Q = 1/(2m) * sum_{j,j'} [ w_{jj'} - k_j * k_{j'} / (2m) ] * delta(c_j, c_{j'})

summed over ordered node pairs, where k_j is the weight of edges at node j
and m is the total edge weight.  The Louvain scheme alternates a local
phase (each node greedily moved to the neighbouring community with the
best modularity gain until no positive move remains) with an aggregation
phase (communities collapse into supernodes, intra-community weight
becoming a self-loop), repeated to a fixed point.

Node visit order is a seed-determined permutation of the sorted node list,
making results reproducible while still exercising Louvain's known order
sensitivity under different seeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ContractViolation, UndefinedModularityError
from .similarity import SimilarityScore

Ref = tuple[int, int]


@dataclass(frozen=True)
class SimilarityGraph:
    """Weighted undirected graph over sentence refs; no self-loops."""

    nodes: tuple[Ref, ...]
    edges: tuple[tuple[Ref, Ref, float], ...]
    tau: float

    def strengths(self) -> dict[Ref, float]:
        """Sum of incident edge weights per node (zero for isolated nodes)."""
        k = {node: 0.0 for node in self.nodes}
        for a, b, w in self.edges:
            k[a] += w
            k[b] += w
        return k

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    def adjacency(self) -> dict[Ref, dict[Ref, float]]:
        adj: dict[Ref, dict[Ref, float]] = {node: {} for node in self.nodes}
        for a, b, w in self.edges:
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def isolated_nodes(self) -> tuple[Ref, ...]:
        touched = {n for a, b, _ in self.edges for n in (a, b)}
        return tuple(n for n in self.nodes if n not in touched)


@dataclass(frozen=True)
class Partition:
    """Node -> community assignment with the partition's modularity."""

    assignment: dict[Ref, int]
    modularity: float

    def communities(self) -> dict[int, list[Ref]]:
        groups: dict[int, list[Ref]] = {}
        for node in sorted(self.assignment):
            groups.setdefault(self.assignment[node], []).append(node)
        return groups


def build_graph(scores: list[SimilarityScore], tau: float) -> SimilarityGraph:
    """Keep exactly the pairs scoring strictly above tau as edges.

    All sentence refs appearing in ``scores`` become nodes, so sentences
    without a strong-enough neighbour are retained as isolated nodes.
    """
    if not 0.0 < tau < 1.0:
        raise ConfigError(f"tau must be in (0, 1), got {tau}")

    nodes: set[Ref] = set()
    weights: dict[tuple[Ref, Ref], float] = {}
    for score in scores:
        if score.a == score.b:
            raise ContractViolation(f"self-pair {score.a} in score list")
        nodes.update((score.a, score.b))
        key = (min(score.a, score.b), max(score.a, score.b))
        if key in weights and abs(weights[key] - score.sigma) > 1e-12:
            raise ContractViolation(
                f"conflicting scores for pair {key}: {weights[key]} vs {score.sigma}")
        weights[key] = score.sigma

    edges = tuple(
        (a, b, sigma)
        for (a, b), sigma in sorted(weights.items())
        if sigma > tau
    )
    return SimilarityGraph(tuple(sorted(nodes)), edges, tau)


def modularity(graph: SimilarityGraph, partition: Partition | dict[Ref, int]) -> float:
    """Recompute Q for an assignment from scratch.

    Implemented through the per-community identity
    ``Q = sum_c [ in_c/(2m) - (tot_c/(2m))^2 ]`` with ``in_c`` the ordered
    intra-community pair weight and ``tot_c`` the community's strength sum;
    algebraically equal to the ordered-pair double sum.
    """
    assignment = partition.assignment if isinstance(partition, Partition) else partition
    m = graph.total_weight()
    if m <= 0.0:
        raise UndefinedModularityError("graph has no edge weight; Q is undefined")

    strengths = graph.strengths()
    in_w: dict[int, float] = {}
    tot: dict[int, float] = {}
    for a, b, w in graph.edges:
        if a not in assignment or b not in assignment:
            missing = a if a not in assignment else b
            raise ContractViolation(f"partition does not cover node {missing}")
        if assignment[a] == assignment[b]:
            in_w[assignment[a]] = in_w.get(assignment[a], 0.0) + 2.0 * w
    for node, cid in assignment.items():
        tot[cid] = tot.get(cid, 0.0) + strengths.get(node, 0.0)

    two_m = 2.0 * m
    return sum(
        in_w.get(cid, 0.0) / two_m - (tot[cid] / two_m) ** 2
        for cid in tot
    )


def louvain(graph: SimilarityGraph, seed: int = 42) -> Partition:
    """Two-phase greedy modularity maximization.

    Isolated nodes are excluded from the optimization, then appended as
    singleton communities.  Community ids are dense integers, numbered by
    each community's smallest sentence ref.
    """
    if not graph.edges:
        raise UndefinedModularityError("graph has no edges; nothing to cluster")

    isolated = set(graph.isolated_nodes())
    active = [n for n in graph.nodes if n not in isolated]
    index = {node: i for i, node in enumerate(active)}

    # adj[i][j] = edge weight; the diagonal (absent at level 0) carries the
    # ordered-pair self weight of an aggregated community.
    adj: dict[int, dict[int, float]] = {i: {} for i in range(len(active))}
    for a, b, w in graph.edges:
        ia, ib = index[a], index[b]
        adj[ia][ib] = adj[ia].get(ib, 0.0) + w
        adj[ib][ia] = adj[ib].get(ia, 0.0) + w

    rng = np.random.Generator(np.random.PCG64(seed))
    current = adj
    levels: list[dict[int, int]] = []
    q = float("-inf")
    while True:
        comm, level_q, moved = _one_level(current, rng)
        if not moved or level_q - q <= 1e-12:
            if level_q > q:
                q = level_q
                if moved:
                    levels.append(comm)
            break
        q = level_q
        current, relabel = _aggregate(current, comm)
        levels.append({node: relabel[c] for node, c in comm.items()})

    assign_int = {i: i for i in range(len(active))}
    for level in levels:
        assign_int = {i: level[c] for i, c in assign_int.items()}

    # Dense ids ordered by smallest member ref; isolated singletons included.
    groups: dict[int, list[Ref]] = {}
    for node, i in index.items():
        groups.setdefault(assign_int[i], []).append(node)
    communities = [sorted(g) for g in groups.values()]
    communities.extend([node] for node in isolated)
    communities.sort(key=lambda g: g[0])

    assignment = {node: cid for cid, group in enumerate(communities) for node in group}
    return Partition(assignment, q)


def _one_level(adj: dict[int, dict[int, float]], rng: np.random.Generator):
    """Local-move phase; returns (community map, Q, whether any node moved)."""
    nodes = sorted(adj)
    k = {i: sum(adj[i].values()) for i in nodes}
    two_m = sum(k.values())

    comm = {i: i for i in nodes}
    tot = {i: k[i] for i in nodes}
    in_w = {i: adj[i].get(i, 0.0) for i in nodes}

    order = [nodes[p] for p in rng.permutation(len(nodes))]
    moved_any = False
    improving = True
    while improving:
        improving = False
        for i in order:
            c_old = comm[i]
            self_loop = adj[i].get(i, 0.0)

            links: dict[int, float] = {}
            for j, w in adj[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w

            # Detach i, then re-insert into the best-gain community.
            tot[c_old] -= k[i]
            in_w[c_old] -= 2.0 * links.get(c_old, 0.0) + self_loop
            comm[i] = -1

            best_c, best_gain = c_old, links.get(c_old, 0.0) - tot[c_old] * k[i] / two_m
            for c in sorted(links):
                if c == c_old:
                    continue
                gain = links[c] - tot[c] * k[i] / two_m
                if gain > best_gain:
                    best_c, best_gain = c, gain

            comm[i] = best_c
            tot[best_c] += k[i]
            in_w[best_c] += 2.0 * links.get(best_c, 0.0) + self_loop
            if best_c != c_old:
                improving = True
                moved_any = True

    q = sum(in_w[c] / two_m - (tot[c] / two_m) ** 2 for c in set(comm.values()))
    return comm, q, moved_any


def _aggregate(adj: dict[int, dict[int, float]], comm: dict[int, int]):
    """Collapse communities into supernodes; intra weight becomes a self-loop."""
    labels = sorted(set(comm.values()))
    relabel = {c: i for i, c in enumerate(labels)}

    new_adj: dict[int, dict[int, float]] = {i: {} for i in range(len(labels))}
    for i, row in adj.items():
        ci = relabel[comm[i]]
        for j, w in row.items():
            if j < i:
                continue
            cj = relabel[comm[j]]
            if i == j:
                new_adj[ci][ci] = new_adj[ci].get(ci, 0.0) + w
            elif ci == cj:
                new_adj[ci][ci] = new_adj[ci].get(ci, 0.0) + 2.0 * w
            else:
                new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
                new_adj[cj][ci] = new_adj[cj].get(ci, 0.0) + w
    return new_adj, relabel


def to_dot(graph: SimilarityGraph) -> str:
    """Render the graph in DOT; node labels are sentence refs, edge labels weights."""
    lines = ["graph similarity {"]
    for i, j in graph.nodes:
        lines.append(f'  s{i}_{j} [label="({i},{j})"];')
    for (ai, aj), (bi, bj), w in graph.edges:
        lines.append(f'  s{ai}_{aj} -- s{bi}_{bj} [label="{w:.3f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json_dict(graph: SimilarityGraph) -> dict:
    """JSON-serializable dump: {"nodes": [...], "edges": [[a, b, w]...], "tau": tau}."""
    return {
        "nodes": [list(node) for node in graph.nodes],
        "edges": [[list(a), list(b), w] for a, b, w in graph.edges],
        "tau": graph.tau,
    }
