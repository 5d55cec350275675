"""Corpus and result file formats.

CorpusFile: JSON-lines records {"id": str, "attributes": [str],
"embedding": [float]?}. Embeddings come either inline on every record or
from one binary sidecar; mixing is rejected. A sidecar is referenced by an
optional first header line {"embedding_file": "<relative path>"} (a JSON
object without an "id") or by an explicit path, which wins.

EmbeddingFile: magic "SEEV", format version u16 LE, row count u32 LE,
dimension u32 LE, then row-major float32 LE; total length is
14 + 4 * rows * dim bytes.

Partition files: {"clusters": [[id, ...], ...]} with stable ordering so
reruns are byte-identical.
"""
from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .edges import MessageRecord

__all__ = [
    "EMBEDDING_MAGIC",
    "EMBEDDING_VERSION",
    "load_corpus",
    "read_embedding_file",
    "write_embedding_file",
    "read_partition_file",
    "write_partition_file",
]

EMBEDDING_MAGIC = b"SEEV"
EMBEDDING_VERSION = 1
_HEADER = struct.Struct("<4sHII")


def write_embedding_file(path: str | Path, rows: np.ndarray) -> None:
    """Write a float32 row-major embedding matrix with the SEEV header."""
    rows = np.ascontiguousarray(rows, dtype=np.float32)
    if rows.ndim != 2:
        raise ValueError("embedding matrix must be 2-dimensional")
    count, dim = rows.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(EMBEDDING_MAGIC, EMBEDDING_VERSION, count, dim))
        fh.write(rows.tobytes())


def read_embedding_file(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise ValueError(f"{path}: too short for an embedding file header")
    magic, version, count, dim = _HEADER.unpack_from(data)
    if magic != EMBEDDING_MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}, expected {EMBEDDING_MAGIC!r}")
    if version != EMBEDDING_VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    expected = _HEADER.size + 4 * count * dim
    if len(data) != expected:
        raise ValueError(
            f"{path}: length {len(data)} does not match header "
            f"({count} rows x {dim} dims requires {expected} bytes)"
        )
    flat = np.frombuffer(data, dtype="<f4", offset=_HEADER.size)
    return flat.reshape(count, dim).astype(np.float64)


def load_corpus(
    path: str | Path, embeddings_path: str | Path | None = None
) -> list[MessageRecord]:
    """Parse a corpus file into records with embeddings attached.

    Errors carry 1-based line numbers. With a sidecar (explicit path or
    header reference) inline embeddings are forbidden and the row count must
    equal the record count; without one, every record needs an inline
    embedding of one shared dimension.
    """
    path = Path(path)
    raw_lines = path.read_text(encoding="utf-8").splitlines()
    entries: list[tuple[int, dict]] = []
    header_sidecar: str | None = None
    for lineno, line in enumerate(raw_lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: invalid JSON ({exc})") from None
        if not isinstance(obj, dict):
            raise ValueError(f"{path}:{lineno}: expected a JSON object")
        if "id" not in obj:
            if lineno == 1 and "embedding_file" in obj:
                header_sidecar = obj["embedding_file"]
                continue
            raise ValueError(f"{path}:{lineno}: record is missing 'id'")
        entries.append((lineno, obj))

    if embeddings_path is None and header_sidecar is not None:
        embeddings_path = path.parent / header_sidecar

    seen: dict[str, int] = {}
    records: list[MessageRecord] = []
    inline: list[np.ndarray | None] = []
    for lineno, obj in entries:
        mid = obj["id"]
        if not isinstance(mid, str) or not mid:
            raise ValueError(f"{path}:{lineno}: 'id' must be a non-empty string")
        if mid in seen:
            raise ValueError(
                f"{path}:{lineno}: duplicate id {mid!r} (first seen on line {seen[mid]})"
            )
        seen[mid] = lineno
        attrs = obj.get("attributes", [])
        if not isinstance(attrs, list) or not all(isinstance(a, str) for a in attrs):
            raise ValueError(f"{path}:{lineno}: 'attributes' must be a list of strings")
        emb = obj.get("embedding")
        if emb is not None:
            if embeddings_path is not None:
                raise ValueError(
                    f"{path}:{lineno}: inline embedding forbidden when a "
                    "sidecar embedding file is used"
                )
            if not isinstance(emb, list) or not all(
                isinstance(x, (int, float)) for x in emb
            ):
                raise ValueError(f"{path}:{lineno}: 'embedding' must be a number list")
            inline.append(np.asarray(emb, dtype=np.float64))
        else:
            inline.append(None)
        records.append(MessageRecord(mid, frozenset(attrs), np.empty(0)))

    if not records:
        raise ValueError(f"{path}: corpus contains no records")

    if embeddings_path is not None:
        matrix = read_embedding_file(embeddings_path)
        if matrix.shape[0] != len(records):
            raise ValueError(
                f"{embeddings_path}: {matrix.shape[0]} embedding rows for "
                f"{len(records)} corpus records"
            )
        vectors = list(matrix)
    else:
        missing = next(
            (entries[i][0] for i, e in enumerate(inline) if e is None), None
        )
        if missing is not None:
            raise ValueError(
                f"{path}:{missing}: record has no embedding and no sidecar "
                "embedding file was given"
            )
        dims = {e.shape[0] for e in inline}
        if len(dims) != 1:
            raise ValueError(f"{path}: mixed embedding dimensions {sorted(dims)}")
        if 0 in dims:
            raise ValueError(f"{path}: embedding dimension must be > 0")
        vectors = inline

    return [
        MessageRecord(r.message_id, r.attributes, v)
        for r, v in zip(records, vectors)
    ]


def write_partition_file(
    path: str | Path, clusters: list[list[str]]
) -> None:
    """Serialize clusters of external ids; layout is fixed for reproducibility."""
    payload = {"clusters": clusters}
    text = json.dumps(payload, indent=1, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_partition_file(path: str | Path) -> list[list[str]]:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(obj, dict) or "clusters" not in obj:
        raise ValueError(f"{path}: expected an object with a 'clusters' key")
    clusters = obj["clusters"]
    if not isinstance(clusters, list) or not all(
        isinstance(c, list) and all(isinstance(x, str) for x in c) for c in clusters
    ):
        raise ValueError(f"{path}: 'clusters' must be a list of id lists")
    return clusters
