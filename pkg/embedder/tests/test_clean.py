from __future__ import annotations

from seev_embed.clean import clean_text


def test_strips_urls():
    assert clean_text("storm hits https://t.co/abc123 tonight") == "storm hits tonight"
    assert clean_text("see www.example.com/x now") == "see now"


def test_strips_mentions_keeps_hashtag_words():
    assert clean_text("@alice thanks for #HurricaneSandy pics") == (
        "thanks for HurricaneSandy pics"
    )


def test_strips_emoji_and_controls():
    assert clean_text("so scary \U0001f62e\U0001f62e stay safe ❤") == (
        "so scary stay safe"
    )
    assert clean_text("line\x00break\x1fhere") == "linebreakhere"


def test_collapses_whitespace():
    assert clean_text("  a \t b \n c  ") == "a b c"


def test_can_become_empty():
    assert clean_text("@bob https://x.y \U0001f600") == ""
    assert clean_text("") == ""


def test_plain_text_untouched():
    assert clean_text("plain words survive") == "plain words survive"
