"""CLI: turn raw message text into detector-ready corpus + embedding files."""
from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from .clean import clean_text
from .encode import load_encoder
from .files import read_raw_messages, write_corpus, write_embeddings


@click.command()
@click.option("--model", required=True,
              help="sentence-transformers model name, or hashing:<dim> for the "
                   "built-in deterministic encoder.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True),
              help="Raw JSONL: {\"id\", \"text\", \"attributes\"?}.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Corpus JSONL to write (references the embedding file).")
@click.option("--emb", "emb_path", required=True, type=click.Path(),
              help="Binary embedding sidecar to write.")
@click.option("--batch-size", default=64, show_default=True)
def main(model, in_path, out_path, emb_path, batch_size):
    """Clean, embed, and export a raw message file."""
    if batch_size < 1:
        click.echo("error: batch size must be >= 1", err=True)
        sys.exit(1)
    try:
        messages = read_raw_messages(in_path)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    try:
        encoder = load_encoder(model)
    except (ValueError, RuntimeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)

    cleaned = [clean_text(m.text) for m in messages]
    empty = [m.message_id for m, c in zip(messages, cleaned) if not c]
    if empty:
        shown = ", ".join(empty[:5])
        click.echo(
            f"warning: {len(empty)} message(s) empty after cleaning "
            f"(embedding the empty string to keep row alignment): {shown}",
            err=True,
        )

    chunks = [
        encoder.encode_batch(cleaned[i : i + batch_size])
        for i in range(0, len(cleaned), batch_size)
    ]
    matrix = np.vstack(chunks)
    if matrix.shape != (len(messages), encoder.dimension):
        click.echo("error: internal failure: embedding shape mismatch", err=True)
        sys.exit(2)

    write_embeddings(emb_path, matrix)
    out = Path(out_path)
    emb = Path(emb_path)
    try:
        reference = str(emb.relative_to(out.parent))
    except ValueError:
        reference = str(emb)
    write_corpus(out, messages, reference)
    click.echo(
        f"embedded {len(messages)} messages at dimension {encoder.dimension} "
        f"-> {out_path} + {emb_path}"
    )


if __name__ == "__main__":
    main()
