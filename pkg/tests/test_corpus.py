from __future__ import annotations

import json

import numpy as np
import pytest

from seev.corpus import (
    EMBEDDING_MAGIC,
    load_corpus,
    read_embedding_file,
    read_partition_file,
    write_embedding_file,
    write_partition_file,
)


def write_lines(path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")


def test_load_corpus_inline(tmp_path):
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"id": "a", "attributes": ["t:1"], "embedding": [1.0, 0.0]},
            {"id": "b", "attributes": [], "embedding": [0.0, 1.0]},
        ],
    )
    records = load_corpus(p)
    assert [r.message_id for r in records] == ["a", "b"]
    assert records[0].attributes == frozenset({"t:1"})
    assert records[1].embedding.tolist() == [0.0, 1.0]


def test_load_corpus_missing_embedding_names_line(tmp_path):
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"id": "a", "attributes": [], "embedding": [1.0]},
            {"id": "b", "attributes": []},
        ],
    )
    with pytest.raises(ValueError, match=r"c\.jsonl:2"):
        load_corpus(p)


def test_load_corpus_duplicate_id(tmp_path):
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"id": "a", "embedding": [1.0]},
            {"id": "a", "embedding": [2.0]},
        ],
    )
    with pytest.raises(ValueError, match="duplicate id"):
        load_corpus(p)


def test_load_corpus_invalid_json_line_number(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"id": "a", "embedding": [1.0]}\nnot json\n', encoding="utf-8")
    with pytest.raises(ValueError, match=r"c\.jsonl:2"):
        load_corpus(p)


def test_load_corpus_mixed_dimensions(tmp_path):
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"id": "a", "embedding": [1.0, 0.0]},
            {"id": "b", "embedding": [1.0]},
        ],
    )
    with pytest.raises(ValueError, match="mixed embedding dimensions"):
        load_corpus(p)


def test_embedding_file_roundtrip(tmp_path):
    p = tmp_path / "e.seev"
    rows = np.arange(12, dtype=np.float32).reshape(3, 4)
    write_embedding_file(p, rows)
    data = p.read_bytes()
    assert data[:4] == EMBEDDING_MAGIC
    assert len(data) == 14 + 4 * 3 * 4
    back = read_embedding_file(p)
    assert back.shape == (3, 4)
    assert np.array_equal(back, rows.astype(np.float64))


def test_embedding_file_length_check(tmp_path):
    p = tmp_path / "e.seev"
    write_embedding_file(p, np.zeros((2, 3), dtype=np.float32))
    p.write_bytes(p.read_bytes()[:-1])
    with pytest.raises(ValueError, match="length"):
        read_embedding_file(p)


def test_embedding_file_bad_magic(tmp_path):
    p = tmp_path / "e.seev"
    write_embedding_file(p, np.zeros((1, 1), dtype=np.float32))
    data = bytearray(p.read_bytes())
    data[:4] = b"NOPE"
    p.write_bytes(bytes(data))
    with pytest.raises(ValueError, match="magic"):
        read_embedding_file(p)


def test_sidecar_via_header_reference(tmp_path):
    emb = tmp_path / "vecs.seev"
    write_embedding_file(emb, np.asarray([[1, 0], [0, 1]], dtype=np.float32))
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"embedding_file": "vecs.seev"},
            {"id": "a", "attributes": []},
            {"id": "b", "attributes": []},
        ],
    )
    records = load_corpus(p)
    assert records[0].embedding.tolist() == [1.0, 0.0]


def test_sidecar_forbids_inline_embeddings(tmp_path):
    emb = tmp_path / "vecs.seev"
    write_embedding_file(emb, np.asarray([[1.0]], dtype=np.float32))
    p = tmp_path / "c.jsonl"
    write_lines(
        p,
        [
            {"embedding_file": "vecs.seev"},
            {"id": "a", "embedding": [1.0]},
        ],
    )
    with pytest.raises(ValueError, match="inline embedding forbidden"):
        load_corpus(p)


def test_sidecar_row_count_mismatch(tmp_path):
    emb = tmp_path / "vecs.seev"
    write_embedding_file(emb, np.zeros((3, 2), dtype=np.float32))
    p = tmp_path / "c.jsonl"
    write_lines(p, [{"id": "a"}, {"id": "b"}])
    with pytest.raises(ValueError, match="3 embedding rows for 2"):
        load_corpus(p, emb)


def test_explicit_sidecar_overrides_header(tmp_path):
    emb_a = tmp_path / "a.seev"
    emb_b = tmp_path / "b.seev"
    write_embedding_file(emb_a, np.asarray([[1.0, 0.0]], dtype=np.float32))
    write_embedding_file(emb_b, np.asarray([[0.0, 2.0]], dtype=np.float32))
    p = tmp_path / "c.jsonl"
    write_lines(p, [{"embedding_file": "a.seev"}, {"id": "x"}])
    records = load_corpus(p, emb_b)
    assert records[0].embedding.tolist() == [0.0, 2.0]


def test_partition_file_roundtrip(tmp_path):
    p = tmp_path / "part.json"
    clusters = [["a", "b"], ["c"]]
    write_partition_file(p, clusters)
    assert read_partition_file(p) == clusters


def test_partition_file_rejects_malformed(tmp_path):
    p = tmp_path / "part.json"
    p.write_text('{"clusters": [1, 2]}', encoding="utf-8")
    with pytest.raises(ValueError, match="clusters"):
        read_partition_file(p)
