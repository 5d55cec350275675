"""Event detection by 2D structural entropy minimization.

`greedy_2d` is the vanilla best-merge loop driven by a priority queue of
candidate pair deltas; `hierarchical_2d` runs it over consecutive cluster
batches of size n, doubling n when an iteration stalls; `detect` is the
user-facing entry that also handles isolated messages.
"""
from __future__ import annotations

import heapq
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .entropy import merge, merge_delta
from .graph import EncodingTree, WeightedGraph, induced_subgraph, two_level_tree

__all__ = ["MinimizerConfig", "greedy_2d", "hierarchical_2d", "detect"]

CONNECTED_PAIRS = "connected-pairs"
ALL_PAIRS = "all-pairs"


@dataclass
class MinimizerConfig:
    """Hierarchical minimizer settings.

    `subgraph_size` is the number of clusters considered per batch; when an
    iteration makes no progress it doubles, at most `max_n_doublings` times.
    `candidate_scope` controls which cluster pairs the greedy step scores:
    only edge-connected ones (default) or every pair.
    """

    subgraph_size: int = 300
    max_n_doublings: int = 16
    candidate_scope: str = CONNECTED_PAIRS
    workers: int = 1

    def __post_init__(self) -> None:
        if self.subgraph_size < 2:
            raise ValueError("subgraph_size must be >= 2")
        if self.max_n_doublings < 0:
            raise ValueError("max_n_doublings must be >= 0")
        if self.candidate_scope not in (CONNECTED_PAIRS, ALL_PAIRS):
            raise ValueError(f"unknown candidate_scope: {self.candidate_scope!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _cluster_adjacency(
    graph: WeightedGraph, tree: EncodingTree
) -> dict[tuple[int, int], float]:
    """Inter-cluster weights for every edge-connected top-level pair."""
    inter: dict[tuple[int, int], float] = {}
    top_of = tree.top_of
    for u, v, w in graph.edges():
        ca = top_of[u].id
        cb = top_of[v].id
        if ca == cb:
            continue
        key = (ca, cb) if ca < cb else (cb, ca)
        inter[key] = inter.get(key, 0.0) + w
    return inter


def _rescan_inter_weights(
    tree: EncodingTree, cluster_id: int
) -> dict[int, float]:
    """Inter weights from one cluster to all its neighbor clusters."""
    node = tree.clusters[cluster_id]
    adj = tree.graph.adj
    top_of = tree.top_of
    out: dict[int, float] = {}
    for v in node.members:
        for nbr, w in adj[v]:
            other = top_of[nbr]
            if other is not node:
                out[other.id] = out.get(other.id, 0.0) + w
    return out


def greedy_2d(
    graph: WeightedGraph,
    initial: EncodingTree,
    candidate_scope: str = CONNECTED_PAIRS,
) -> list[list[int]]:
    """Repeated best-pair merging until no merge lowers the tree entropy.

    Keeps a heap of candidate pair deltas; entries touching a merged cluster
    are invalidated by version counters and rescored lazily. Equal deltas
    resolve to the smallest (cluster-id, cluster-id) pair. Returns the
    top-level clusters in ascending cluster-id order.
    """
    if initial.graph is not graph:
        raise ValueError("initial tree was built for a different graph")
    tree = initial
    version: dict[int, int] = {cid: 0 for cid in tree.clusters}
    heap: list[tuple[float, int, int, int, int]] = []

    inter = _cluster_adjacency(graph, tree)
    if candidate_scope == ALL_PAIRS:
        pairs = [(a, b) for a, b in combinations(sorted(tree.clusters), 2)]
    else:
        pairs = sorted(inter)
    for a, b in pairs:
        d = merge_delta(graph, tree, a, b, w_inter=inter.get((a, b), 0.0))
        heap.append((d, a, b, 0, 0))
    heapq.heapify(heap)

    while heap:
        d, a, b, va, vb = heapq.heappop(heap)
        if version.get(a) != va or version.get(b) != vb:
            continue  # stale: one side merged since this entry was scored
        if d >= 0.0:
            break
        merged = merge(tree, a, b)
        dead = a if merged == b else b
        del version[dead]
        version[merged] += 1
        fresh = _rescan_inter_weights(tree, merged)
        if candidate_scope == ALL_PAIRS:
            others = (cid for cid in version if cid != merged)
        else:
            others = fresh.keys()
        for other in others:
            lo, hi = (merged, other) if merged < other else (other, merged)
            d2 = merge_delta(graph, tree, lo, hi, w_inter=fresh.get(other, 0.0))
            heapq.heappush(heap, (d2, lo, hi, version[lo], version[hi]))
    return tree.partition()


def _minimize_batch(
    graph: WeightedGraph,
    batch: list[list[int]],
    candidate_scope: str,
) -> list[list[int]]:
    nodes = [v for cluster in batch for v in cluster]
    sub, mapping = induced_subgraph(graph, nodes)
    local: dict[int, int] = {g: i for i, g in enumerate(mapping)}
    local_clusters = [[local[v] for v in cluster] for cluster in batch]
    tree = two_level_tree(sub, local_clusters)
    result = greedy_2d(sub, tree, candidate_scope)
    return [[mapping[i] for i in cluster] for cluster in result]


def _same_partition(a: list[list[int]], b: list[list[int]]) -> bool:
    return {frozenset(c) for c in a} == {frozenset(c) for c in b}


def hierarchical_2d(
    graph: WeightedGraph, config: MinimizerConfig | None = None
) -> list[list[int]]:
    """Batched 2D entropy minimization over a growing cluster queue.

    Starts from singleton clusters, repeatedly minimizes consecutive batches
    of `n` clusters on their induced subgraphs, and stops once a single batch
    covered everything. A stalled iteration doubles n; hitting the doubling
    cap returns the current partition with a warning.
    """
    config = config or MinimizerConfig()
    if graph.node_count == 0:
        return []
    clusters: list[list[int]] = [[v] for v in range(graph.node_count)]
    n = config.subgraph_size
    doublings = 0
    while True:
        batches = [clusters[i : i + n] for i in range(0, len(clusters), n)]
        if config.workers > 1 and len(batches) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(
                    pool.map(
                        lambda b: _minimize_batch(graph, b, config.candidate_scope),
                        batches,
                    )
                )
        else:
            results = [
                _minimize_batch(graph, b, config.candidate_scope) for b in batches
            ]
        new_clusters = [cluster for res in results for cluster in res]
        if len(batches) == 1:
            return new_clusters
        if _same_partition(new_clusters, clusters):
            if doublings >= config.max_n_doublings:
                warnings.warn(
                    "doubling cap reached before convergence; "
                    "returning the current partition",
                    RuntimeWarning,
                )
                return new_clusters
            n *= 2
            doublings += 1
        clusters = new_clusters


def detect(
    graph: WeightedGraph, config: MinimizerConfig | None = None
) -> list[list[int]]:
    """Full event detection: isolated nodes become singleton clusters,
    everything else goes through the hierarchical minimizer."""
    config = config or MinimizerConfig()
    if graph.node_count == 0:
        return []
    isolated = [v for v in range(graph.node_count) if graph.degrees[v] == 0.0]
    active = [v for v in range(graph.node_count) if graph.degrees[v] > 0.0]
    clusters: list[list[int]] = []
    if active:
        sub, mapping = induced_subgraph(graph, active)
        for cluster in hierarchical_2d(sub, config):
            clusters.append(sorted(mapping[i] for i in cluster))
    clusters.extend([v] for v in isolated)
    return clusters
