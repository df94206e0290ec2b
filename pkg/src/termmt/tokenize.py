"""Whitespace tokenizer that peels punctuation off word edges.

Hyphens and apostrophes inside a word stay part of it (``hand-washing``,
``aujourd'hui``); everything that is not a letter or digit at the start or
end of a whitespace-delimited chunk becomes its own one-character token.
"""

from __future__ import annotations

import re

_CHUNK = re.compile(r"\S+")


def _is_word_char(ch: str) -> bool:
    return ch.isalnum()


def tokenize_spans(text: str) -> list[tuple[str, int, int]]:
    """Tokens with their ``[start, end)`` character offsets into ``text``."""
    out = []
    for m in _CHUNK.finditer(text):
        start, end = m.start(), m.end()
        lead = []
        while start < end and not _is_word_char(text[start]):
            lead.append((text[start], start, start + 1))
            start += 1
        trail = []
        while end > start and not _is_word_char(text[end - 1]):
            trail.append((text[end - 1], end - 1, end))
            end -= 1
        out.extend(lead)
        if start < end:
            out.append((text[start:end], start, end))
        out.extend(reversed(trail))
    return out


def tokenize(text: str) -> list[str]:
    """Split ``text`` into tokens.

    >>> tokenize("Wash your hands!")
    ['Wash', 'your', 'hands', '!']
    >>> tokenize("hand-washing")
    ['hand-washing']
    """
    return [tok for tok, _, _ in tokenize_spans(text)]


def is_punct(token: str) -> bool:
    return not any(ch.isalnum() for ch in token)
