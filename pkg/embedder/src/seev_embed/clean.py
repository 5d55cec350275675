"""Message text cleaning applied before embedding.

Strips the parts of a social message that carry no sentence-level meaning:
URLs, user ids (@mentions), emoji and pictographs, and control characters.
Hashtag words are kept but the '#' marker is dropped. Whitespace collapses
to single spaces. Cleaning can produce an empty string; callers keep the
row anyway to preserve alignment.
"""
from __future__ import annotations

import re
import unicodedata

__all__ = ["clean_text"]

_URL = re.compile(r"""(?:https?://|www\.)\S+""", re.IGNORECASE)
_MENTION = re.compile(r"@\w+")
_HASH_MARK = re.compile(r"#(\w+)")
# Pictographs, symbols, dingbats, flags, and the supplemental plane blocks
# most emoji live in.
_EMOJI = re.compile(
    "["
    "\U0001f000-\U0001fbff"
    "←-⇿"
    "⌀-➿"
    "⬀-⯿"
    "︎️‍"
    "]+"
)
_MULTISPACE = re.compile(r"\s+")


def clean_text(text: str) -> str:
    if not text:
        return ""
    out = _URL.sub(" ", text)
    out = _MENTION.sub(" ", out)
    out = _HASH_MARK.sub(r"\1", out)
    out = _EMOJI.sub(" ", out)
    out = "".join(
        ch for ch in out if ch in "\t\n " or not unicodedata.category(ch).startswith("C")
    )
    return _MULTISPACE.sub(" ", out).strip()
