"""Command-line surface: detect, eval, synth, bench, knn-trace.

Exit codes: 0 on success, 1 on input errors, 2 on internal invariant
failures. Options may come from a JSON config file (--config); explicit
flags win over config values.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .bench import CSV_HEADER, run_benchmark
from .corpus import (
    load_corpus,
    read_partition_file,
    write_embedding_file,
    write_partition_file,
)
from .edges import rank_neighbors, select_k
from .metrics import ami, ari, nmi
from .pipeline import RunConfig, detect_events
from .synth import SynthSpec, generate_corpus

CONFIG_KEYS = (
    "subgraph_size",
    "max_n_doublings",
    "candidate_scope",
    "edge_mode",
    "workers",
)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from None
    unknown = set(obj) - set(CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return obj


def _run_config(config_path: str | None, **flags) -> RunConfig:
    values = _load_config_file(config_path)
    for key, val in flags.items():
        if val is not None:
            values[key] = val
    return RunConfig(**values)


@click.group()
def main() -> None:
    """Structural-entropy event clustering."""


@main.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--embeddings", "embeddings_path", type=click.Path(), default=None,
              help="Sidecar embedding file; overrides a corpus header reference.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Partition JSON output.")
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the run report JSON here as well.")
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.option("-n", "--subgraph-size", type=int, default=None)
@click.option("--max-doublings", "max_n_doublings", type=int, default=None)
@click.option("--candidate-scope",
              type=click.Choice(["connected-pairs", "all-pairs"]), default=None)
@click.option("--edge-mode",
              type=click.Choice(["union", "attributes", "semantic"]), default=None)
@click.option("--workers", type=int, default=None)
def detect(corpus_path, embeddings_path, out_path, report_path, config_path,
           subgraph_size, max_n_doublings, candidate_scope, edge_mode, workers):
    """Detect event clusters in a corpus and write a partition file."""
    try:
        config = _run_config(
            config_path,
            subgraph_size=subgraph_size,
            max_n_doublings=max_n_doublings,
            candidate_scope=candidate_scope,
            edge_mode=edge_mode,
            workers=workers,
        )
        records = load_corpus(corpus_path, embeddings_path)
    except ValueError as exc:
        _fail(str(exc), 1)
    try:
        result = detect_events(records, config)
        write_partition_file(out_path, result.clusters)
    except ValueError as exc:
        _fail(str(exc), 1)
    except Exception as exc:  # invariant breakage, not an input problem
        _fail(f"internal failure: {exc}", 2)
    report = dict(result.report)
    report.pop("se_trace", None)
    if report_path:
        Path(report_path).write_text(
            json.dumps(report, indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )
    click.echo(json.dumps(report, sort_keys=True, default=float))


@main.command("eval")
@click.option("--pred", "pred_path", required=True, type=click.Path())
@click.option("--truth", "truth_path", required=True, type=click.Path())
@click.option("--out", "out_path", type=click.Path(), default=None)
def eval_cmd(pred_path, truth_path, out_path):
    """Score a predicted partition against ground truth (ARI/AMI/NMI)."""
    try:
        pred = read_partition_file(pred_path)
        truth = read_partition_file(truth_path)
        pred_label = {mid: i for i, cluster in enumerate(pred) for mid in cluster}
        truth_label = {mid: i for i, cluster in enumerate(truth) for mid in cluster}
        if set(pred_label) != set(truth_label):
            only_pred = sorted(set(pred_label) - set(truth_label))[:3]
            only_truth = sorted(set(truth_label) - set(pred_label))[:3]
            raise ValueError(
                "partitions cover different item sets "
                f"(only in pred: {only_pred}, only in truth: {only_truth})"
            )
        ids = sorted(pred_label)
        a = [truth_label[i] for i in ids]
        b = [pred_label[i] for i in ids]
        scores = {"ari": ari(a, b), "ami": ami(a, b), "nmi": nmi(a, b)}
    except ValueError as exc:
        _fail(str(exc), 1)
    text = json.dumps(scores, indent=1, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


@main.command()
@click.option("--events", required=True, type=int)
@click.option("--messages", "messages_per_event", required=True, type=int,
              help="Messages per event.")
@click.option("--dim", type=int, default=32, show_default=True)
@click.option("--noise-scale", type=float, default=0.3, show_default=True,
              help="Noise norm as a fraction of the mean inter-centroid distance.")
@click.option("--attr-coverage", type=float, default=1.0, show_default=True)
@click.option("--leak-prob", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--shuffle/--no-shuffle", default=True, show_default=True)
@click.option("--out", "corpus_path", required=True, type=click.Path())
@click.option("--truth", "truth_path", required=True, type=click.Path())
@click.option("--sidecar/--inline", default=False, show_default=True,
              help="Write embeddings to a binary sidecar instead of inline JSON.")
def synth(events, messages_per_event, dim, noise_scale, attr_coverage, leak_prob,
          seed, shuffle, corpus_path, truth_path, sidecar):
    """Generate a planted corpus plus its ground-truth partition."""
    try:
        spec = SynthSpec(
            events=events,
            messages_per_event=messages_per_event,
            dim=dim,
            noise_scale=noise_scale,
            attr_coverage=attr_coverage,
            leak_prob=leak_prob,
            seed=seed,
            shuffle=shuffle,
        )
        records, truth = generate_corpus(spec)
    except ValueError as exc:
        _fail(str(exc), 1)
    corpus_path = Path(corpus_path)
    lines = []
    if sidecar:
        emb_path = corpus_path.with_suffix(corpus_path.suffix + ".seev")
        write_embedding_file(
            emb_path, np.asarray([r.embedding for r in records], dtype=np.float32)
        )
        lines.append(json.dumps({"embedding_file": emb_path.name}))
    for r in records:
        obj: dict = {"id": r.message_id, "attributes": sorted(r.attributes)}
        if not sidecar:
            obj["embedding"] = [float(x) for x in r.embedding]
        lines.append(json.dumps(obj, sort_keys=True))
    corpus_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    write_partition_file(truth_path, truth)
    click.echo(f"wrote {len(records)} messages across {events} events")


@main.command()
@click.option("--sizes", required=True,
              help="Comma-separated node counts, e.g. 500,2000.")
@click.option("--n-values", default="200,400", show_default=True,
              help="Comma-separated hierarchical sub-graph sizes.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--blocks", type=int, default=10, show_default=True)
@click.option("--p-intra", type=float, default=0.3, show_default=True)
@click.option("--p-inter", type=float, default=0.06, show_default=True)
@click.option("--include-vanilla/--skip-vanilla", default=True, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def bench(sizes, n_values, seed, blocks, p_intra, p_inter, include_vanilla, out_path):
    """Time vanilla vs hierarchical minimization; writes a CSV."""
    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip()]
        n_list = [int(s) for s in n_values.split(",") if s.strip()]
        rows = run_benchmark(
            size_list, n_list, seed=seed, blocks=blocks,
            p_intra=p_intra, p_inter=p_inter, include_vanilla=include_vanilla,
        )
    except ValueError as exc:
        _fail(str(exc), 1)
    text = "\n".join([CSV_HEADER] + [r.as_csv() for r in rows])
    Path(out_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


@main.command("knn-trace")
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--embeddings", "embeddings_path", type=click.Path(), default=None)
@click.option("--rule", type=click.Choice(["first", "global"]), default="first",
              show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def knn_trace(corpus_path, embeddings_path, rule, out_path):
    """Dump the SE-vs-k trace as CSV for plotting."""
    try:
        records = load_corpus(corpus_path, embeddings_path)
        ranking = rank_neighbors(records)
        trace = select_k(ranking, rule=rule)
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["k,se_1d"]
    lines += [f"{k},{v:.12f}" for k, v in enumerate(trace.values, start=1)]
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"chosen_k={trace.chosen_k} stable={trace.stable}")


if __name__ == "__main__":
    main()
