"""The curated stopword list: serialization, membership, removal, POS report.

Two on-disk formats. The plain format is one word per line with no
header, byte-compatible with the usual stopword-file conventions. The
structured format adds a versioned header, optional POS tag per word,
and a provenance record; it round-trips losslessly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import ListFormatError
from .normalize import normalize, tokens_of

STRUCTURED_HEADER = "# stopkit stopwords v1"


@dataclass(frozen=True)
class StopwordList:
    """An immutable set of curated stopwords.

    Every word is a single valid token (normalized, no punctuation or
    digits); pos_tags may cover any subset of the words.
    """

    words: frozenset[str]
    pos_tags: Mapping[str, str] = field(default_factory=dict)
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for w in self.words:
            _require_valid_word(w)
        stray = set(self.pos_tags) - self.words
        if stray:
            raise ListFormatError(
                f"pos_tags cover words not in the list: {sorted(stray)[:5]}"
            )

    def __len__(self) -> int:
        return len(self.words)


def _require_valid_word(word: str, where: str = "") -> None:
    if tokens_of(word) != [word]:
        raise ListFormatError(
            f"{where}invalid stopword {word!r}: not a single normalized token"
        )


def save(slist: StopwordList, destination: str | Path, fmt: str = "structured") -> None:
    """Write the list in lexicographic word order.

    fmt "plain" emits bare words (tags and provenance dropped);
    "structured" is the lossless format.
    """
    if not slist.words:
        raise ListFormatError("refusing to save an empty stopword list")
    dest = Path(destination)
    words = sorted(slist.words)
    if fmt == "plain":
        dest.write_text("\n".join(words) + "\n", encoding="utf-8")
        return
    if fmt != "structured":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        STRUCTURED_HEADER,
        "# provenance " + json.dumps(dict(slist.provenance), ensure_ascii=False, sort_keys=True),
    ]
    for w in words:
        tag = slist.pos_tags.get(w)
        lines.append(f"{w}\t{tag}" if tag is not None else w)
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load(source: str | Path) -> StopwordList:
    """Read a stopword list in either format, validating every word.

    Duplicate or un-normalized words are rejected with their line number.
    """
    src = Path(source)
    words: dict[str, int] = {}
    pos_tags: dict[str, str] = {}
    provenance: dict[str, Any] = {}
    with src.open("r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line.lstrip("# ")
                if body.startswith("provenance "):
                    try:
                        provenance = json.loads(body[len("provenance "):])
                    except json.JSONDecodeError as exc:
                        raise ListFormatError(
                            f"{src}:{line_no}: bad provenance JSON: {exc}"
                        ) from exc
                continue
            word, tab, tag = line.partition("\t")
            _require_valid_word(word, where=f"{src}:{line_no}: ")
            if word in words:
                raise ListFormatError(
                    f"{src}:{line_no}: duplicate word {word!r} "
                    f"(first seen at line {words[word]})"
                )
            words[word] = line_no
            if tab:
                pos_tags[word] = tag
    if not words:
        raise ListFormatError(f"{src}: no words found")
    return StopwordList(
        words=frozenset(words), pos_tags=pos_tags, provenance=provenance
    )


def is_stopword(slist: StopwordList, term: str) -> bool:
    """Exact membership after normalizing the query."""
    return normalize(term) in slist.words


def remove_stopwords(text: str, slist: StopwordList) -> str:
    """Drop list members from the text's token stream.

    The text is normalized and tokenized exactly as during curation, so
    punctuation disappears and the surviving tokens come back joined by
    single spaces in their original order.
    """
    return " ".join(t for t in tokens_of(text) if t not in slist.words)


def load_pos_map(source: str | Path) -> dict[str, str]:
    """Read a tab-separated word-to-tag file."""
    src = Path(source)
    mapping: dict[str, str] = {}
    with src.open("r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ListFormatError(
                    f"{src}:{line_no}: expected 'word<TAB>tag', got {line!r}"
                )
            mapping[parts[0]] = parts[1]
    return mapping


def categorize(slist: StopwordList, pos_map: Mapping[str, str]) -> dict[str, int]:
    """Count list words per POS tag; words the map misses land in 'untagged'."""
    counts: Counter[str] = Counter()
    for w in slist.words:
        counts[pos_map.get(w, "untagged")] += 1
    return dict(counts)
