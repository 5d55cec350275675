"""Reading raw message files and writing the detector's input formats.

The corpus/embedding formats are the detector's public interface: corpus
files are JSON lines with a first-line sidecar reference, and embedding
files carry the "SEEV" header (magic, version u16 LE, rows u32 LE, dim
u32 LE) followed by row-major float32 LE data.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["RawMessage", "read_raw_messages", "write_corpus", "write_embeddings"]

_HEADER = struct.Struct("<4sHII")
_MAGIC = b"SEEV"
_VERSION = 1


@dataclass(frozen=True)
class RawMessage:
    message_id: str
    text: str
    attributes: tuple[str, ...]


def read_raw_messages(path: str | Path) -> list[RawMessage]:
    """Parse {"id", "text", "attributes"?} JSON lines; errors carry line numbers."""
    path = Path(path)
    out: list[RawMessage] = []
    seen: set[str] = set()
    for lineno, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: invalid JSON ({exc})") from None
        if not isinstance(obj, dict) or "id" not in obj:
            raise ValueError(f"{path}:{lineno}: expected an object with an 'id'")
        mid = obj["id"]
        if not isinstance(mid, str) or not mid:
            raise ValueError(f"{path}:{lineno}: 'id' must be a non-empty string")
        if mid in seen:
            raise ValueError(f"{path}:{lineno}: duplicate id {mid!r}")
        seen.add(mid)
        text = obj.get("text")
        if not isinstance(text, str):
            raise ValueError(f"{path}:{lineno}: 'text' must be a string")
        attrs = obj.get("attributes", [])
        if not isinstance(attrs, list) or not all(isinstance(a, str) for a in attrs):
            raise ValueError(f"{path}:{lineno}: 'attributes' must be a string list")
        out.append(RawMessage(mid, text, tuple(attrs)))
    if not out:
        raise ValueError(f"{path}: no records")
    return out


def write_embeddings(path: str | Path, rows: np.ndarray) -> None:
    rows = np.ascontiguousarray(rows, dtype=np.float32)
    count, dim = rows.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, count, dim))
        fh.write(rows.tobytes())


def write_corpus(
    path: str | Path, messages: list[RawMessage], embedding_file: str
) -> None:
    """Corpus JSONL referencing the sidecar; row order follows `messages`."""
    lines = [json.dumps({"embedding_file": embedding_file})]
    for msg in messages:
        lines.append(
            json.dumps(
                {"id": msg.message_id, "attributes": list(msg.attributes)},
                sort_keys=True,
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
