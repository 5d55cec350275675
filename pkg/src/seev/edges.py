"""Message graph construction: attribute edges, cosine neighbor rankings,
and neighbor-count selection by incremental 1D entropy minimization.

Edge weights are cosine similarities clamped at zero; a clamped pair is
weightless and never enters the graph. All tie-breaks are by ascending node
index so identical corpora yield byte-identical downstream output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import DegreeDelta, se_1d_from_degrees, se_1d_update
from .graph import WeightedGraph, build_graph

__all__ = [
    "MessageRecord",
    "NeighborRanking",
    "SeTrace",
    "build_attribute_edges",
    "rank_neighbors",
    "select_k",
    "build_message_graph",
]


@dataclass(frozen=True)
class MessageRecord:
    """One social message: external id, namespaced attribute strings
    (e.g. "hashtag:x", "sender:u42"), and an embedding vector."""

    message_id: str
    attributes: frozenset[str]
    embedding: np.ndarray


def build_attribute_edges(corpus: list[MessageRecord]) -> set[tuple[int, int]]:
    """Pairs of message indices sharing at least one attribute.

    Uses an inverted index attribute -> message list, so the cost is
    proportional to the number of produced pairs rather than all pairs.
    """
    if not corpus:
        raise ValueError("empty corpus")
    index: dict[str, list[int]] = {}
    for i, record in enumerate(corpus):
        for attr in record.attributes:
            index.setdefault(attr, []).append(i)
    pairs: set[tuple[int, int]] = set()
    for bucket in index.values():
        for a in range(len(bucket)):
            for b in range(a + 1, len(bucket)):
                pairs.add((bucket[a], bucket[b]))
    return pairs


class NeighborRanking:
    """Per-message neighbor lists sorted by descending cosine similarity.

    `order[i]` holds the other |V|-1 message indices for message i; ties are
    broken by ascending index. `sims[i]` holds the matching similarities.
    `unit` keeps the normalized embeddings for canonical pair weights.
    """

    def __init__(self, order: np.ndarray, sims: np.ndarray, unit: np.ndarray):
        self.order = order
        self.sims = sims
        self.unit = unit

    @property
    def count(self) -> int:
        return self.order.shape[0]

    def pair_weight(self, i: int, j: int) -> float:
        """Clamped cosine weight, evaluated once per unordered pair."""
        if i > j:
            i, j = j, i
        cos = float(np.dot(self.unit[i], self.unit[j]))
        return cos if cos > 0.0 else 0.0


def rank_neighbors(corpus: list[MessageRecord], tile_size: int = 512) -> NeighborRanking:
    """Exact full cosine ranking, computed tile-by-tile to bound memory."""
    if len(corpus) < 2:
        raise ValueError("need at least 2 messages to rank neighbors")
    emb = np.asarray([r.embedding for r in corpus], dtype=np.float64)
    if emb.ndim != 2:
        raise ValueError("inconsistent embedding dimensions in corpus")
    norms = np.linalg.norm(emb, axis=1)
    bad = np.nonzero(norms == 0.0)[0]
    if bad.size:
        ids = ", ".join(corpus[i].message_id for i in bad[:5])
        raise ValueError(f"zero-norm embedding (cosine undefined) for: {ids}")
    unit = emb / norms[:, None]
    n = len(corpus)
    order = np.empty((n, n - 1), dtype=np.int32)
    sims = np.empty((n, n - 1), dtype=np.float64)
    for start in range(0, n, tile_size):
        stop = min(start + tile_size, n)
        block = unit[start:stop] @ unit.T
        for row, i in enumerate(range(start, stop)):
            block[row, i] = -np.inf  # self ranks last, then dropped
        # Stable sort on the negated row: descending similarity, ties by index.
        idx = np.argsort(-block, axis=1, kind="stable")[:, : n - 1]
        order[start:stop] = idx
        sims[start:stop] = np.take_along_axis(block, idx, axis=1)
    return NeighborRanking(order, sims, unit)


@dataclass
class SeTrace:
    """1D SE values by candidate neighbor count k = 1, 2, ... plus the pick."""

    values: list[float]
    chosen_k: int
    stable: bool = True  # False when the global-argmin fallback was used


def _insert_edge_batch(
    ranking: NeighborRanking,
    k: int,
    degrees: np.ndarray,
    present: set[tuple[int, int]],
) -> DegreeDelta:
    """Insert each node's k-th neighbor edge; returns the degree delta."""
    old_volume = float(degrees.sum())
    touched: dict[int, float] = {}
    n = ranking.count
    for i in range(n):
        j = int(ranking.order[i, k - 1])
        key = (i, j) if i < j else (j, i)
        if key in present:
            continue
        w = ranking.pair_weight(*key)
        if w <= 0.0:
            continue  # clamped edge carries no weight
        present.add(key)
        for node in key:
            if node not in touched:
                touched[node] = float(degrees[node])
            degrees[node] += w
    affected = [(v, old, float(degrees[v])) for v, old in sorted(touched.items())]
    return DegreeDelta(affected, old_volume, float(degrees.sum()))


def select_k(ranking: NeighborRanking, rule: str = "first") -> SeTrace:
    """Pick the neighbor count by walking the SE-vs-k trace.

    Grows the semantic graph one k-NN edge set at a time, updating the 1D SE
    incrementally. With rule="first", stops at the first strict local minimum
    of the trace (both neighbors must exist); if none appears before
    k = |V|-1, falls back to the global argmin. rule="global" always takes
    the global argmin.
    """
    if rule not in ("first", "global"):
        raise ValueError(f"unknown stable-point rule: {rule!r}")
    n = ranking.count
    if n < 3:
        raise ValueError("need at least 3 messages to select a neighbor count")
    degrees = np.zeros(n, dtype=np.float64)
    present: set[tuple[int, int]] = set()
    first_batch = _insert_edge_batch(ranking, 1, degrees, present)
    values = [se_1d_from_degrees(degrees, first_batch.new_volume)]
    k = 2
    while k < n:
        delta = _insert_edge_batch(ranking, k, degrees, present)
        values.append(se_1d_update(values[-1], delta))
        if (
            rule == "first"
            and len(values) >= 3
            and values[-2] < values[-3]
            and values[-2] < values[-1]
        ):
            return SeTrace(values, chosen_k=k - 1, stable=True)
        k += 1
    best = int(np.argmin(values))  # first minimum on ties
    return SeTrace(values, chosen_k=best + 1, stable=False)


def build_message_graph(
    corpus: list[MessageRecord],
    attribute_edges: set[tuple[int, int]],
    chosen_k: int,
    ranking: NeighborRanking,
) -> WeightedGraph:
    """Union of attribute and top-k semantic pairs with clamped cosine weights.

    One edge per unordered pair; pairs whose cosine clamps to zero are
    dropped entirely.
    """
    if chosen_k < 1:
        raise ValueError("chosen_k must be >= 1")
    pairs = set(attribute_edges)
    pairs.update(semantic_pairs(ranking, chosen_k))
    edges = []
    for i, j in sorted(pairs):
        w = ranking.pair_weight(i, j)
        if w > 0.0:
            edges.append((i, j, w))
    return build_graph(edges, len(corpus))


def semantic_pairs(ranking: NeighborRanking, k: int) -> set[tuple[int, int]]:
    """Unordered pairs linking each message to its top-k neighbors."""
    pairs: set[tuple[int, int]] = set()
    n = ranking.count
    for i in range(n):
        for pos in range(min(k, n - 1)):
            j = int(ranking.order[i, pos])
            pairs.add((i, j) if i < j else (j, i))
    return pairs
