"""Text encoders.

`load_encoder` returns a callable mapping a list of strings to a float32
matrix. Names of the form "hashing:<dim>" select a dependency-free
deterministic encoder (token feature hashing, L2-normalized) intended for
CI and offline smoke runs; anything else is treated as a
sentence-transformers model name and mean-pooled by the model runtime.
"""
from __future__ import annotations

import hashlib
import math
from typing import Callable, Protocol

import numpy as np

__all__ = ["Encoder", "HashingEncoder", "load_encoder"]


class Encoder(Protocol):
    dimension: int

    def encode_batch(self, texts: list[str]) -> np.ndarray: ...


class HashingEncoder:
    """Deterministic bag-of-tokens feature hashing into `dimension` buckets.

    Identical texts always produce bitwise-identical rows; empty text maps
    to the zero vector plus a constant bias bucket so rows stay nonzero.
    """

    def __init__(self, dimension: int):
        if dimension < 2:
            raise ValueError("hashing encoder needs dimension >= 2")
        self.dimension = dimension

    def _token_bucket(self, token: str) -> tuple[int, float]:
        digest = hashlib.sha256(token.encode("utf-8")).digest()
        bucket = int.from_bytes(digest[:4], "little") % (self.dimension - 1)
        sign = 1.0 if digest[4] % 2 == 0 else -1.0
        return bucket, sign

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        rows = np.zeros((len(texts), self.dimension), dtype=np.float32)
        for r, text in enumerate(texts):
            for token in text.lower().split():
                bucket, sign = self._token_bucket(token)
                rows[r, bucket] += sign
            rows[r, self.dimension - 1] = 0.5  # bias keeps empty rows nonzero
            norm = float(np.linalg.norm(rows[r]))
            rows[r] /= norm
        return rows


class SentenceTransformerEncoder:
    def __init__(self, model_name: str):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:  # pragma: no cover - environment-specific
            raise RuntimeError(
                "sentence-transformers is not installed; install the 'models' "
                "extra or use a hashing:<dim> encoder"
            ) from exc
        try:
            self._model = SentenceTransformer(model_name)
        except Exception as exc:
            raise RuntimeError(f"cannot load model {model_name!r}: {exc}") from exc
        probe = self._model.encode([""], convert_to_numpy=True)
        self.dimension = int(probe.shape[1])

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        out = self._model.encode(
            texts, convert_to_numpy=True, show_progress_bar=False
        )
        return np.asarray(out, dtype=np.float32)


def load_encoder(name: str) -> Encoder:
    if name.startswith("hashing:"):
        try:
            dim = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad hashing encoder spec {name!r}; use hashing:<dim>")
        return HashingEncoder(dim)
    return SentenceTransformerEncoder(name)
