"""Structural-entropy event clustering toolkit."""

from .edges import MessageRecord, NeighborRanking, SeTrace
from .entropy import (
    DegreeDelta,
    merge,
    merge_delta,
    se_1d,
    se_1d_update,
    se_tree,
)
from .graph import (
    EncodingTree,
    WeightedGraph,
    build_graph,
    cut_weight,
    induced_subgraph,
    two_level_tree,
)
from .metrics import ami, ari, nmi
from .partition import MinimizerConfig, detect, greedy_2d, hierarchical_2d
from .pipeline import DetectionResult, RunConfig, detect_events
from .synth import SynthSpec, generate_corpus, planted_block_graph

__version__ = "0.1.0"

__all__ = [
    "MessageRecord",
    "NeighborRanking",
    "SeTrace",
    "DegreeDelta",
    "merge",
    "merge_delta",
    "se_1d",
    "se_1d_update",
    "se_tree",
    "EncodingTree",
    "WeightedGraph",
    "build_graph",
    "cut_weight",
    "induced_subgraph",
    "two_level_tree",
    "ami",
    "ari",
    "nmi",
    "MinimizerConfig",
    "detect",
    "greedy_2d",
    "hierarchical_2d",
    "DetectionResult",
    "RunConfig",
    "detect_events",
    "SynthSpec",
    "generate_corpus",
    "planted_block_graph",
]
