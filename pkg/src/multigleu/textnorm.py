"""Text normalization and tokenization shared by every scoring path.

All scoring in this package is defined over token sequences produced here,
so the rules are pinned down exactly: NFC normalization, whitespace
collapsing, and a language-agnostic punctuation-detaching word tokenizer.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

WORD = "word"
CHAR = "char"
MODES = (WORD, CHAR)


@dataclass(frozen=True, slots=True)
class TokenSeq:
    """An ordered token sequence tagged with the tokenization mode."""

    tokens: tuple[str, ...]
    mode: str

    def __len__(self) -> int:
        return len(self.tokens)


def normalize(text: str) -> str:
    """Return ``text`` in NFC form with whitespace runs collapsed to one space.

    Leading and trailing whitespace is removed. Idempotent; canonically
    equivalent inputs (e.g. precomposed vs. decomposed accents) normalize to
    identical strings.
    """
    return " ".join(unicodedata.normalize("NFC", text).split())


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _split_chunk(chunk: str) -> list[str]:
    # Every Unicode category-P character becomes its own token; the
    # remaining contiguous runs stay together.
    tokens: list[str] = []
    buf: list[str] = []
    for ch in chunk:
        if _is_punct(ch):
            if buf:
                tokens.append("".join(buf))
                buf.clear()
            tokens.append(ch)
        else:
            buf.append(ch)
    if buf:
        tokens.append("".join(buf))
    return tokens


def tokenize_words(text: str) -> TokenSeq:
    """Split normalized ``text`` into word tokens.

    Splits on whitespace, then detaches each Unicode punctuation character
    (category P*) into a token of its own, so ``"Hello, world!"`` yields
    ``Hello , world !``. Expects input already passed through
    :func:`normalize`.
    """
    tokens: list[str] = []
    for chunk in text.split():
        tokens.extend(_split_chunk(chunk))
    return TokenSeq(tuple(tokens), WORD)


def tokenize_chars(text: str) -> TokenSeq:
    """Split normalized ``text`` into one token per non-whitespace code point.

    Whitespace is dropped entirely, the usual convention when scoring
    unsegmented scripts at the character level.
    """
    return TokenSeq(tuple(ch for ch in text if not ch.isspace()), CHAR)


def tokenize(text: str, mode: str) -> TokenSeq:
    """Normalize ``text`` and tokenize it in the given mode."""
    if mode not in MODES:
        raise ValueError(f"unknown tokenization mode: {mode!r}")
    normalized = normalize(text)
    if mode == WORD:
        return tokenize_words(normalized)
    return tokenize_chars(normalized)
