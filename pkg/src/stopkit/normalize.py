"""Unicode normalization and tokenization shared by every pipeline stage.

Curation and removal must tokenize identically, so this is the only
tokenizer in the package. Tokens are maximal runs of letter and
combining-mark characters; everything else (whitespace, punctuation,
digits, symbols) separates tokens. Combining marks such as Devanagari
matras, nukta, and virama therefore stay attached to their base
consonants.
"""

from __future__ import annotations

import unicodedata

ZWJ = "‍"
ZWNJ = "‌"

# Unicode major categories whose characters may appear inside a token.
# L = letters, M = combining marks. Digits (Nd) are deliberately absent:
# numeric strings never become candidate terms.
_TOKEN_CATEGORIES = frozenset("LM")

# category() is slow enough to matter on corpus scans; memoize per char.
_char_is_token: dict[str, bool] = {}


def normalize(text: str) -> str:
    """Return the canonical form of ``text``.

    ZWJ/ZWNJ are removed, the result is NFC-normalized, cased letters are
    lowercased, and whitespace runs collapse to single spaces with the
    ends stripped. Total over any Unicode string; idempotent.
    """
    text = text.replace(ZWJ, "").replace(ZWNJ, "")
    # NFC after lowercasing: a few lowercase mappings produce decomposed
    # sequences, and the output must be NFC.
    text = unicodedata.normalize("NFC", text.lower())
    return " ".join(text.split())


def tokenize(text: str) -> list[str]:
    """Split normalized ``text`` into tokens, preserving input order.

    ``text`` must already be in :func:`normalize` form. Characters outside
    the letter/mark categories terminate the current token and are
    dropped, so punctuation-only and digit-only stretches yield nothing.
    """
    tokens: list[str] = []
    current: list[str] = []
    is_token = _char_is_token
    for ch in text:
        ok = is_token.get(ch)
        if ok is None:
            ok = unicodedata.category(ch)[0] in _TOKEN_CATEGORIES
            is_token[ch] = ok
        if ok:
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def tokens_of(raw: str) -> list[str]:
    """Normalize then tokenize raw text in one step."""
    return tokenize(normalize(raw))


def segment(text: str) -> list[tuple[str, bool]]:
    """Split normalized text into (piece, is_token) runs, dropping nothing.

    Concatenating the pieces reproduces ``text``; the True pieces are
    exactly the tokens :func:`tokenize` would emit. Used to render
    sentences with individual tokens addressable (e.g. highlighting).
    """
    pieces: list[tuple[str, bool]] = []
    current: list[str] = []
    current_is_token = False
    is_token = _char_is_token
    for ch in text:
        ok = is_token.get(ch)
        if ok is None:
            ok = unicodedata.category(ch)[0] in _TOKEN_CATEGORIES
            is_token[ch] = ok
        if current and ok != current_is_token:
            pieces.append(("".join(current), current_is_token))
            current = []
        current.append(ch)
        current_is_token = ok
    if current:
        pieces.append(("".join(current), current_is_token))
    return pieces
