"""Text-to-embedding adapter for the seev detector."""

from .clean import clean_text
from .encode import HashingEncoder, load_encoder
from .files import RawMessage, read_raw_messages, write_corpus, write_embeddings

__all__ = [
    "clean_text",
    "HashingEncoder",
    "load_encoder",
    "RawMessage",
    "read_raw_messages",
    "write_corpus",
    "write_embeddings",
]
