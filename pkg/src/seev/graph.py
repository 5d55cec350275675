"""Weighted undirected graph and encoding-tree structures.

Node ids are dense integers in [0, node_count); the pipeline layer owns the
mapping from external message ids. A WeightedGraph is immutable after
construction and safe to share across workers; an EncodingTree is mutated
only by the minimizer that owns it.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "WeightedGraph",
    "EncodingTree",
    "TreeNode",
    "build_graph",
    "cut_weight",
    "two_level_tree",
    "induced_subgraph",
    "check_partition",
]


class WeightedGraph:
    """Undirected graph with nonnegative edge weights.

    Stores adjacency lists for iteration plus a sorted-pair index for O(1)
    membership checks. At most one edge per unordered pair, no self loops,
    zero-weight edges are dropped at construction.
    """

    __slots__ = ("node_count", "degrees", "volume", "adj", "_pair_weight")

    def __init__(self, node_count: int, pair_weight: dict[tuple[int, int], float]):
        self.node_count = node_count
        self._pair_weight = pair_weight
        self.adj: list[list[tuple[int, float]]] = [[] for _ in range(node_count)]
        degrees = np.zeros(node_count, dtype=np.float64)
        for (u, v), w in pair_weight.items():
            self.adj[u].append((v, w))
            self.adj[v].append((u, w))
            degrees[u] += w
            degrees[v] += w
        self.degrees = degrees
        self.volume = float(degrees.sum())

    @property
    def edge_count(self) -> int:
        return len(self._pair_weight)

    def edges(self) -> Iterable[tuple[int, int, float]]:
        for (u, v), w in self._pair_weight.items():
            yield u, v, w

    def degree(self, node: int) -> float:
        return float(self.degrees[node])

    def weight(self, u: int, v: int) -> float:
        """Weight of edge {u, v}, or 0.0 if absent."""
        if u > v:
            u, v = v, u
        return self._pair_weight.get((u, v), 0.0)

    def neighbors(self, node: int) -> list[tuple[int, float]]:
        return self.adj[node]


def build_graph(
    edges: Iterable[tuple[int, int, float]], node_count: int
) -> WeightedGraph:
    """Build a deduplicated undirected graph from (u, v, weight) listings.

    Rejects self-loops, negative weights, out-of-range ids, and duplicate
    pair listings that disagree on weight. Zero-weight edges are dropped:
    they contribute nothing to any entropy term.
    """
    if node_count < 0:
        raise ValueError("node_count must be >= 0")
    pair_weight: dict[tuple[int, int], float] = {}
    for u, v, w in edges:
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise ValueError(f"edge ({u}, {v}) has node id outside [0, {node_count})")
        if u == v:
            raise ValueError(f"self-loop on node {u} is not allowed")
        if w < 0:
            raise ValueError(f"negative weight {w} on edge ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        prev = pair_weight.get(key)
        if prev is not None and prev != w:
            raise ValueError(
                f"conflicting weights for edge {key}: {prev} vs {w}"
            )
        if w > 0:
            pair_weight[key] = w
    return WeightedGraph(node_count, pair_weight)


def cut_weight(graph: WeightedGraph, members: Iterable[int]) -> float:
    """Total weight of edges with exactly one endpoint in `members`."""
    member_set = set(members)
    for node in member_set:
        if not (0 <= node < graph.node_count):
            raise ValueError(f"unknown node id {node}")
    total = 0.0
    for node in member_set:
        for nbr, w in graph.adj[node]:
            if nbr not in member_set:
                total += w
    return total


def check_partition(clusters: Sequence[Iterable[int]], node_count: int) -> list[list[int]]:
    """Validate disjointness and coverage; returns clusters as lists of ints."""
    seen: set[int] = set()
    out: list[list[int]] = []
    for cluster in clusters:
        cl = list(cluster)
        if not cl:
            raise ValueError("empty cluster in partition")
        for node in cl:
            if not (0 <= node < node_count):
                raise ValueError(f"node id {node} outside [0, {node_count})")
            if node in seen:
                raise ValueError(f"node {node} appears in more than one cluster")
            seen.add(node)
        out.append(cl)
    if len(seen) != node_count:
        missing = next(i for i in range(node_count) if i not in seen)
        raise ValueError(f"partition does not cover node {missing}")
    return out


class TreeNode:
    """One node of an encoding tree: a subset of graph nodes plus caches.

    `vol` is the summed degree of the member set, `cut` the summed weight of
    edges leaving it. Parent/child links are object references so merges can
    rewire in O(children of the smaller side).
    """

    __slots__ = ("id", "parent", "children", "members", "vol", "cut")

    def __init__(
        self,
        node_id: int,
        parent: "TreeNode | None",
        members: set[int],
        vol: float,
        cut: float,
    ):
        self.id = node_id
        self.parent = parent
        self.children: list[TreeNode] = []
        self.members = members
        self.vol = vol
        self.cut = cut

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"TreeNode(id={self.id}, |T|={len(self.members)}, vol={self.vol}, g={self.cut})"


class EncodingTree:
    """Hierarchical partition of a graph's node set.

    The root holds all nodes, every leaf holds exactly one, and each internal
    node's children partition its member set. Two-level trees (root, cluster
    layer, leaves) additionally expose `clusters` keyed by cluster id and a
    node -> cluster lookup used by merge bookkeeping.
    """

    def __init__(self, graph: WeightedGraph, root: TreeNode):
        self.graph = graph
        self.root = root
        self.clusters: dict[int, TreeNode] = {}
        self.top_of: dict[int, TreeNode] = {}
        self._next_id = root.id + 1

    def new_id(self) -> int:
        nid = self._next_id
        self._next_id += 1
        return nid

    def is_two_level(self) -> bool:
        return all(
            all(len(leaf.members) == 1 for leaf in cl.children)
            for cl in self.clusters.values()
        )

    def iter_nodes(self) -> Iterable[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)

    def partition(self) -> list[list[int]]:
        """Top-level clusters in ascending cluster-id order, members sorted."""
        return [
            sorted(self.clusters[cid].members) for cid in sorted(self.clusters)
        ]

    def height(self) -> int:
        def depth(node: TreeNode) -> int:
            if not node.children:
                return 0
            return 1 + max(depth(c) for c in node.children)

        return depth(self.root)

    def check_caches(self) -> None:
        """Recompute vol/cut of every node from raw edges; raises on mismatch."""
        for node in self.iter_nodes():
            vol = float(sum(self.graph.degrees[v] for v in node.members))
            cut = cut_weight(self.graph, node.members)
            if not (np.isclose(vol, node.vol) and np.isclose(cut, node.cut)):
                raise AssertionError(
                    f"cache mismatch at tree node {node.id}: "
                    f"vol {node.vol} vs {vol}, cut {node.cut} vs {cut}"
                )
            if node.children:
                child_union: set[int] = set()
                child_vol = 0.0
                for child in node.children:
                    if child_union & child.members:
                        raise AssertionError("children member sets overlap")
                    child_union |= child.members
                    child_vol += child.vol
                if child_union != node.members:
                    raise AssertionError("children do not cover parent member set")
                if not np.isclose(child_vol, node.vol):
                    raise AssertionError("children volumes do not sum to parent")


def two_level_tree(
    graph: WeightedGraph, partition: Sequence[Iterable[int]]
) -> EncodingTree:
    """Build the height-2 encoding tree: root, one node per cluster, leaf per node.

    Cluster ids are 1..len(partition) in input order (root is 0), which fixes
    the tie-breaking order downstream minimizers rely on.
    """
    clusters = check_partition(partition, graph.node_count)
    root = TreeNode(0, None, set(range(graph.node_count)), graph.volume, 0.0)
    tree = EncodingTree(graph, root)
    next_leaf_id = 1 + len(clusters)
    for idx, members in enumerate(clusters):
        member_set = set(members)
        vol = float(sum(graph.degrees[v] for v in member_set))
        cut = cut_weight(graph, member_set)
        cnode = TreeNode(1 + idx, root, member_set, vol, cut)
        root.children.append(cnode)
        tree.clusters[cnode.id] = cnode
        for v in members:
            d = float(graph.degrees[v])
            leaf = TreeNode(next_leaf_id, cnode, {v}, d, d)
            next_leaf_id += 1
            cnode.children.append(leaf)
            tree.top_of[v] = cnode
    tree._next_id = next_leaf_id
    return tree


def induced_subgraph(
    graph: WeightedGraph, nodes: Sequence[int]
) -> tuple[WeightedGraph, list[int]]:
    """Subgraph over `nodes` keeping only internal edges.

    Local ids follow the order of `nodes`; returns (subgraph, local->global map).
    """
    local_of = {g: i for i, g in enumerate(nodes)}
    if len(local_of) != len(nodes):
        raise ValueError("duplicate node in subgraph request")
    pair_weight: dict[tuple[int, int], float] = {}
    for g in nodes:
        lu = local_of[g]
        for nbr, w in graph.adj[g]:
            lv = local_of.get(nbr)
            if lv is None:
                continue
            key = (lu, lv) if lu < lv else (lv, lu)
            pair_weight[key] = w
    return WeightedGraph(len(nodes), pair_weight), list(nodes)
