"""Planted-partition generators: corpora with known event labels, and raw
block-model graphs for benchmarking. Everything is deterministic under the
given seed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edges import MessageRecord
from .graph import WeightedGraph, build_graph

__all__ = ["SynthSpec", "generate_corpus", "planted_block_graph"]


@dataclass
class SynthSpec:
    """Planted corpus shape.

    Each event has a unit centroid; message embeddings are the centroid plus
    Gaussian noise whose expected norm is `noise_scale` times the mean
    pairwise centroid distance. Each message carries its event's tag with
    probability `attr_coverage` and, with probability `leak_prob`, one tag of
    a random other event.
    """

    events: int
    messages_per_event: int
    dim: int = 32
    noise_scale: float = 0.3
    attr_coverage: float = 1.0
    leak_prob: float = 0.0
    seed: int = 0
    shuffle: bool = True
    event_sizes: tuple[int, ...] | None = None  # overrides messages_per_event

    def __post_init__(self) -> None:
        if self.events < 1:
            raise ValueError("need at least one event")
        if self.messages_per_event < 1:
            raise ValueError("need at least one message per event")
        if self.event_sizes is not None:
            if len(self.event_sizes) != self.events:
                raise ValueError("event_sizes must list one size per event")
            if any(s < 1 for s in self.event_sizes):
                raise ValueError("event sizes must be >= 1")
        if self.dim < 1:
            raise ValueError("embedding dimension must be >= 1")
        for name in ("attr_coverage", "leak_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.noise_scale < 0:
            raise ValueError("noise_scale must be >= 0")


def generate_corpus(spec: SynthSpec) -> tuple[list[MessageRecord], list[list[str]]]:
    """Returns (records, truth clusters of message ids)."""
    rng = np.random.default_rng(spec.seed)
    centroids = rng.normal(size=(spec.events, spec.dim))
    centroids /= np.linalg.norm(centroids, axis=1)[:, None]
    if spec.events > 1:
        diffs = centroids[:, None, :] - centroids[None, :, :]
        dists = np.linalg.norm(diffs, axis=2)
        mean_dist = float(dists[np.triu_indices(spec.events, k=1)].mean())
    else:
        mean_dist = 1.0
    sigma = spec.noise_scale * mean_dist / np.sqrt(spec.dim)

    sizes = (
        list(spec.event_sizes)
        if spec.event_sizes is not None
        else [spec.messages_per_event] * spec.events
    )
    total = sum(sizes)
    event_of = np.repeat(np.arange(spec.events), sizes)
    if spec.shuffle:
        order = rng.permutation(total)
    else:
        order = np.arange(total)

    records: list[MessageRecord] = []
    truth: list[list[str]] = [[] for _ in range(spec.events)]
    width = len(str(total - 1))
    for out_idx, src in enumerate(order):
        event = int(event_of[src])
        emb = centroids[event] + rng.normal(0.0, sigma, spec.dim)
        attrs: set[str] = set()
        if rng.random() < spec.attr_coverage:
            attrs.add(f"tag:event{event}")
        if spec.events > 1 and rng.random() < spec.leak_prob:
            other = int(rng.integers(spec.events - 1))
            if other >= event:
                other += 1
            attrs.add(f"tag:event{other}")
        mid = f"m{out_idx:0{width}d}"
        records.append(MessageRecord(mid, frozenset(attrs), emb))
        truth[event].append(mid)
    return records, truth


def planted_block_graph(
    nodes: int,
    blocks: int,
    p_intra: float,
    p_inter: float,
    seed: int = 0,
) -> tuple[WeightedGraph, list[int]]:
    """Unit-weight block-model graph plus the planted block labels."""
    if nodes < 1 or blocks < 1 or blocks > nodes:
        raise ValueError("need 1 <= blocks <= nodes")
    rng = np.random.default_rng(seed)
    size = nodes // blocks
    labels = [min(v // size, blocks - 1) for v in range(nodes)]
    edges = []
    for u in range(nodes):
        lu = labels[u]
        probs = rng.random(nodes - u - 1)
        for offset, roll in enumerate(probs):
            v = u + 1 + offset
            p = p_intra if lu == labels[v] else p_inter
            if roll < p:
                edges.append((u, v, 1.0))
    return build_graph(edges, nodes), labels
