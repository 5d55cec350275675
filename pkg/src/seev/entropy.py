"""Structural entropy formulas over weighted graphs and encoding trees.

All entropies are in bits (log base 2) with the 0*log(0) := 0 convention for
zero-degree nodes and zero-volume clusters. `merge_delta` is pure so a
minimizer can score many candidate pairs against one shared tree snapshot;
`merge` is the only mutator.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .graph import EncodingTree, TreeNode, WeightedGraph

__all__ = [
    "DegenerateGraphWarning",
    "DegreeDelta",
    "se_1d",
    "se_1d_from_degrees",
    "se_1d_update",
    "se_tree",
    "merge_delta",
    "merge",
]


class DegenerateGraphWarning(UserWarning):
    """Raised as a warning when entropy of a zero-volume graph is requested."""


def se_1d_from_degrees(degrees, volume: float) -> float:
    """One-dimensional SE of a degree sequence: -sum (d/vol) * log2(d/vol)."""
    if volume <= 0:
        warnings.warn(
            "graph volume is 0; 1D SE defined as 0", DegenerateGraphWarning
        )
        return 0.0
    total = 0.0
    for d in degrees:
        if d > 0:
            p = d / volume
            total -= p * math.log2(p)
    return total


def se_1d(graph: WeightedGraph) -> float:
    """One-dimensional SE of a graph (degree-distribution entropy)."""
    return se_1d_from_degrees(graph.degrees, graph.volume)


@dataclass
class DegreeDelta:
    """Degree changes caused by inserting one batch of edges.

    `affected` lists (node, old_degree, new_degree) for every node whose
    degree actually changed; insertions only, so new > old for each entry and
    the volume increase equals the summed degree increases.
    """

    affected: list[tuple[int, float, float]]
    old_volume: float
    new_volume: float

    def __post_init__(self) -> None:
        gained = 0.0
        for node, old, new in self.affected:
            if new <= old:
                raise ValueError(
                    f"node {node}: new degree {new} must exceed old degree {old}"
                )
            gained += new - old
        if not math.isclose(
            self.new_volume - self.old_volume, gained, rel_tol=1e-9, abs_tol=1e-9
        ):
            raise ValueError(
                "volume change does not match summed degree changes: "
                f"{self.new_volume - self.old_volume} vs {gained}"
            )


def se_1d_update(previous: float, delta: DegreeDelta) -> float:
    """Incremental 1D SE after an edge-batch insertion.

    Equivalent to recomputing from scratch on the post-insertion graph:
    rescale the old entropy to the new volume, then swap the affected nodes'
    contributions. Runs in O(|affected|).
    """
    if not delta.affected and delta.new_volume == delta.old_volume:
        return previous
    if delta.new_volume <= delta.old_volume:
        raise ValueError("insertions must strictly increase the volume")
    vol_new = delta.new_volume
    vol_old = delta.old_volume
    if vol_old == 0:
        # Previous graph was edgeless: every nonzero degree is in `affected`,
        # so the correction terms alone rebuild the initial-form entropy.
        rescaled = 0.0
    else:
        ratio = vol_old / vol_new
        rescaled = ratio * (previous - math.log2(ratio))
    corr = 0.0
    for _, old, new in delta.affected:
        if old > 0:
            p = old / vol_new
            corr += p * math.log2(p)
        q = new / vol_new
        corr -= q * math.log2(q)
    return rescaled + corr


def _tree_term(g: float, vol: float, parent_vol: float, root_vol: float) -> float:
    # -(g/vol_root) * log2(vol/parent_vol); zero-volume nodes contribute 0.
    if g == 0.0 or vol == 0.0:
        return 0.0
    return -(g / root_vol) * math.log2(vol / parent_vol)


def _check_bound(graph: WeightedGraph, tree: EncodingTree) -> None:
    if tree.graph is not graph:
        if (
            tree.graph.node_count != graph.node_count
            or tree.graph.volume != graph.volume
        ):
            raise ValueError("encoding tree does not belong to this graph")


def se_tree(graph: WeightedGraph, tree: EncodingTree) -> float:
    """SE of the graph on an encoding tree of any height.

    Sums -(g/vol(root)) * log2(vol(node)/vol(parent)) over all non-root nodes.
    """
    _check_bound(graph, tree)
    root_vol = graph.volume
    if root_vol <= 0:
        return 0.0
    total = 0.0
    for node in tree.iter_nodes():
        if node.parent is None:
            continue
        total += _tree_term(node.cut, node.vol, node.parent.vol, root_vol)
    return total


def _require_top_pair(tree: EncodingTree, a: int, b: int) -> tuple[TreeNode, TreeNode]:
    if a == b:
        raise ValueError("cannot merge a cluster with itself")
    na = tree.clusters.get(a)
    nb = tree.clusters.get(b)
    if na is None or nb is None:
        raise ValueError(f"cluster ids {a}, {b} must both be children of the root")
    return na, nb


def inter_cluster_weight(tree: EncodingTree, a: int, b: int) -> float:
    """Summed weight of edges between two top-level clusters.

    Scans the adjacency of the smaller cluster; O(its degree volume).
    """
    na, nb = _require_top_pair(tree, a, b)
    small, other = (na, nb) if len(na.members) <= len(nb.members) else (nb, na)
    adj = tree.graph.adj
    top_of = tree.top_of
    total = 0.0
    for v in small.members:
        for nbr, w in adj[v]:
            if top_of[nbr] is other:
                total += w
    return total


def _merge_delta_terms(
    vol_a: float,
    g_a: float,
    vol_b: float,
    g_b: float,
    w_inter: float,
    root_vol: float,
) -> float:
    vol_n = vol_a + vol_b
    g_n = g_a + g_b - 2.0 * w_inter
    delta = 0.0
    if g_n > 0.0 and vol_n > 0.0:
        delta -= (g_n / root_vol) * math.log2(vol_n / root_vol)
    if vol_a > 0.0:
        delta -= (vol_a / root_vol) * math.log2(vol_a / vol_n)
    if vol_b > 0.0:
        delta -= (vol_b / root_vol) * math.log2(vol_b / vol_n)
    if g_a > 0.0 and vol_a > 0.0:
        delta += (g_a / root_vol) * math.log2(vol_a / root_vol)
    if g_b > 0.0 and vol_b > 0.0:
        delta += (g_b / root_vol) * math.log2(vol_b / root_vol)
    return delta


def merge_delta(
    graph: WeightedGraph,
    tree: EncodingTree,
    a: int,
    b: int,
    w_inter: float | None = None,
) -> float:
    """SE change from merging top-level clusters a and b, without mutating.

    Pass `w_inter` when the caller already knows the inter-cluster weight
    (the greedy minimizer tracks it); otherwise it is computed by an
    adjacency scan of the smaller cluster.
    """
    _check_bound(graph, tree)
    na, nb = _require_top_pair(tree, a, b)
    if w_inter is None:
        w_inter = inter_cluster_weight(tree, a, b)
    return _merge_delta_terms(
        na.vol, na.cut, nb.vol, nb.cut, w_inter, graph.volume
    )


def merge(tree: EncodingTree, a: int, b: int) -> int:
    """Replace top-level clusters a and b with their union.

    The new node keeps id min(a, b), adopts both children lists, and gets
    vol = vol_a + vol_b and cut = g_a + g_b - 2 * inter-cluster weight.
    Rewiring touches only the smaller side. Returns the surviving id.
    """
    na, nb = _require_top_pair(tree, a, b)
    w_inter = inter_cluster_weight(tree, a, b)
    big, small = (na, nb) if len(na.members) >= len(nb.members) else (nb, na)
    new_vol = na.vol + nb.vol
    new_cut = na.cut + nb.cut - 2.0 * w_inter
    for child in small.children:
        child.parent = big
    big.children.extend(small.children)
    big.members.update(small.members)
    for v in small.members:
        tree.top_of[v] = big
    big.vol = new_vol
    big.cut = new_cut
    del tree.clusters[a]
    del tree.clusters[b]
    new_id = min(a, b)
    big.id = new_id
    tree.clusters[new_id] = big
    tree.root.children = list(tree.clusters.values())
    return new_id
