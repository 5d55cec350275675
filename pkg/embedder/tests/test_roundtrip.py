"""Secondary acceptance: adapter output validates as detector input and a
10-message fixture flows through `seev detect` end to end."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from seev_embed.cli import main

FIXTURE = [
    {"id": "m0", "text": "hurricane sandy floods lower manhattan", "attributes": ["h:sandy"]},
    {"id": "m1", "text": "sandy storm surge hits manhattan streets", "attributes": ["h:sandy"]},
    {"id": "m2", "text": "subway closed after sandy flooding", "attributes": ["h:sandy"]},
    {"id": "m3", "text": "hurricane sandy power outage downtown", "attributes": []},
    {"id": "m4", "text": "flood water rising near the harbor sandy", "attributes": ["h:sandy"]},
    {"id": "m5", "text": "champions league final kicks off tonight", "attributes": ["h:ucl"]},
    {"id": "m6", "text": "what a goal in the champions league final", "attributes": ["h:ucl"]},
    {"id": "m7", "text": "penalty shootout decides the league final", "attributes": ["h:ucl"]},
    {"id": "m8", "text": "fans celebrate the champions league win", "attributes": []},
    {"id": "m9", "text": "trophy lifted after the final whistle", "attributes": ["h:ucl"]},
]


@pytest.fixture
def adapter_output(tmp_path):
    raw = tmp_path / "raw.jsonl"
    raw.write_text("\n".join(json.dumps(r) for r in FIXTURE) + "\n", encoding="utf-8")
    corpus = tmp_path / "corpus.jsonl"
    emb = tmp_path / "vecs.seev"
    result = CliRunner().invoke(
        main,
        ["--model", "hashing:48", "--in", str(raw),
         "--out", str(corpus), "--emb", str(emb)],
    )
    assert result.exit_code == 0, result.output
    return corpus, emb


def test_output_passes_detector_validation(adapter_output):
    from seev.corpus import load_corpus, read_embedding_file

    corpus, emb = adapter_output
    matrix = read_embedding_file(emb)
    assert matrix.shape == (10, 48)
    records = load_corpus(corpus)
    assert [r.message_id for r in records] == [m["id"] for m in FIXTURE]
    assert records[0].embedding.shape == (48,)


def test_roundtrip_through_detect_cli(adapter_output, tmp_path):
    corpus, _ = adapter_output
    out = tmp_path / "partition.json"
    proc = subprocess.run(
        [sys.executable, "-m", "seev.cli", "detect",
         "--corpus", str(corpus), "--out", str(out), "-n", "16"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    partition = json.loads(out.read_text())
    ids = sorted(m for c in partition["clusters"] for m in c)
    assert ids == [m["id"] for m in FIXTURE]
