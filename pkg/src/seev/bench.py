"""Wall-time comparison of vanilla vs hierarchical 2D entropy minimization
on planted block-model graphs."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .entropy import se_tree
from .graph import two_level_tree
from .partition import MinimizerConfig, greedy_2d, hierarchical_2d
from .synth import planted_block_graph

__all__ = ["BenchRow", "run_benchmark"]


@dataclass
class BenchRow:
    size: int
    method: str  # "vanilla" or "hierarchical"
    subgraph_size: int | None
    seconds: float
    clusters: int
    se_2d: float

    def as_csv(self) -> str:
        n = "" if self.subgraph_size is None else str(self.subgraph_size)
        return (
            f"{self.size},{self.method},{n},"
            f"{self.seconds:.6f},{self.clusters},{self.se_2d:.9f}"
        )


CSV_HEADER = "size,method,n,seconds,clusters,se_2d"


def run_benchmark(
    sizes: list[int],
    n_values: list[int],
    seed: int = 0,
    blocks: int = 10,
    p_intra: float = 0.3,
    p_inter: float = 0.06,
    include_vanilla: bool = True,
) -> list[BenchRow]:
    """Time each minimizer on one planted graph per size.

    Graph generation is excluded from the timings; only the minimizer runs
    are measured.
    """
    if not sizes:
        raise ValueError("empty size list")
    if not n_values and not include_vanilla:
        raise ValueError("nothing to benchmark")
    rows: list[BenchRow] = []
    for size in sizes:
        graph, _ = planted_block_graph(size, blocks, p_intra, p_inter, seed=seed)
        if include_vanilla:
            tree = two_level_tree(graph, [[v] for v in range(size)])
            t0 = time.perf_counter()
            part = greedy_2d(graph, tree)
            elapsed = time.perf_counter() - t0
            se = se_tree(graph, two_level_tree(graph, part))
            rows.append(BenchRow(size, "vanilla", None, elapsed, len(part), se))
        for n in n_values:
            cfg = MinimizerConfig(subgraph_size=n)
            t0 = time.perf_counter()
            part = hierarchical_2d(graph, cfg)
            elapsed = time.perf_counter() - t0
            se = se_tree(graph, two_level_tree(graph, part))
            rows.append(BenchRow(size, "hierarchical", n, elapsed, len(part), se))
    return rows
