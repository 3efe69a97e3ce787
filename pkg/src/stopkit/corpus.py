"""Corpus ingestion, chunking, and streaming per-chunk term statistics.

A corpus is a UTF-8 plain-text file with one sentence per line (LF or
CRLF). Lines that normalize to the empty string are skipped everywhere,
so "sentence index" below always means the index among non-empty lines.
Statistics are collected in a single streaming pass per chunk; memory is
bounded by the chunk vocabulary, not the corpus length.
"""

from __future__ import annotations

import codecs
import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

from .errors import CorpusError
from .normalize import normalize, tokenize

logger = logging.getLogger(__name__)

_READ_BLOCK = 1 << 20


@dataclass(frozen=True)
class CorpusHandle:
    """An ingested, validated corpus file."""

    path: Path
    n_sentences: int
    byte_len: int
    checksum: str
    n_blank_lines: int = 0


@dataclass(frozen=True)
class ChunkDescriptor:
    """One contiguous slice of the corpus, bounds inclusive, 0-based."""

    index: int
    first_line: int
    last_line: int
    n_sentences: int

    def __post_init__(self) -> None:
        if self.n_sentences != self.last_line - self.first_line + 1:
            raise ValueError("n_sentences inconsistent with line bounds")
        if self.first_line < 0 or self.n_sentences < 1:
            raise ValueError("invalid chunk bounds")


@dataclass(frozen=True)
class ChunkStats:
    """Exact term statistics for one chunk.

    doc_freq counts sentences containing the term at least once; a
    sentence is the "document" of the document-frequency fraction.
    """

    chunk: ChunkDescriptor
    term_count: Mapping[str, int]
    doc_freq: Mapping[str, int]
    total_tokens: int
    n_docs: int
    corpus_checksum: str = field(default="", compare=False)


def ingest(path: str | Path) -> CorpusHandle:
    """Validate a corpus file and return its handle.

    Raises FileNotFoundError for a missing file, CorpusError for invalid
    UTF-8 (with the byte offset of the first bad sequence) and for a
    corpus with no non-empty lines.
    """
    p = Path(path)
    digest = hashlib.sha256()
    decoder = codecs.getincrementaldecoder("utf-8")()
    byte_len = 0
    with p.open("rb") as f:
        while True:
            block = f.read(_READ_BLOCK)
            if not block:
                break
            digest.update(block)
            try:
                decoder.decode(block)
            except UnicodeDecodeError as exc:
                raise CorpusError(
                    f"{p}: invalid UTF-8 at byte {byte_len + exc.start}"
                ) from exc
            byte_len += len(block)
        try:
            decoder.decode(b"", final=True)
        except UnicodeDecodeError as exc:
            raise CorpusError(
                f"{p}: truncated UTF-8 sequence at end of file"
            ) from exc

    n_sentences = 0
    n_blank = 0
    with p.open("r", encoding="utf-8") as f:
        for line in f:
            if normalize(line):
                n_sentences += 1
            else:
                n_blank += 1
    if n_sentences == 0:
        raise CorpusError(f"{p}: empty corpus (no non-empty lines)")
    if n_blank:
        logger.warning("%s: skipped %d blank line(s)", p, n_blank)
    return CorpusHandle(
        path=p,
        n_sentences=n_sentences,
        byte_len=byte_len,
        checksum=digest.hexdigest(),
        n_blank_lines=n_blank,
    )


def chunk_spans(n_sentences: int, n_chunks: int) -> list[ChunkDescriptor]:
    """Partition [0, n_sentences) into n_chunks contiguous descriptors.

    Sizes differ by at most one; the first n_sentences % n_chunks chunks
    carry the extra sentence. Pure descriptor arithmetic, no file access.
    """
    if n_chunks < 1:
        raise ValueError("n_chunks must be >= 1")
    if n_chunks > n_sentences:
        raise ValueError(
            f"n_chunks ({n_chunks}) exceeds sentence count ({n_sentences})"
        )
    base, extra = divmod(n_sentences, n_chunks)
    spans = []
    start = 0
    for i in range(n_chunks):
        size = base + (1 if i < extra else 0)
        spans.append(
            ChunkDescriptor(
                index=i,
                first_line=start,
                last_line=start + size - 1,
                n_sentences=size,
            )
        )
        start += size
    return spans


def chunk(corpus: CorpusHandle, n_chunks: int) -> list[ChunkDescriptor]:
    """Split an ingested corpus into n_chunks equal-sized chunks."""
    return chunk_spans(corpus.n_sentences, n_chunks)


def iter_sentences(
    corpus: CorpusHandle, chunk: ChunkDescriptor | None = None
) -> Iterator[tuple[int, str]]:
    """Yield (sentence_index, raw_line) pairs, optionally chunk-restricted.

    Blank lines are skipped without consuming an index, matching ingest.
    Stops reading as soon as the chunk's last sentence has been yielded.
    """
    first = chunk.first_line if chunk else 0
    last = chunk.last_line if chunk else corpus.n_sentences - 1
    idx = 0
    line_no = 0
    try:
        with corpus.path.open("r", encoding="utf-8") as f:
            for line in f:
                line_no += 1
                raw = line.rstrip("\r\n")
                if not normalize(raw):
                    continue
                if idx > last:
                    break
                if idx >= first:
                    yield idx, raw
                idx += 1
    except OSError as exc:
        raise CorpusError(
            f"{corpus.path}: I/O failure at line {line_no}: {exc}"
        ) from exc


def chunk_stats(corpus: CorpusHandle, chunk: ChunkDescriptor) -> ChunkStats:
    """Count term and document frequencies for one chunk in a single pass."""
    if not (0 <= chunk.first_line <= chunk.last_line < corpus.n_sentences):
        raise CorpusError(
            f"chunk {chunk.index} [{chunk.first_line}, {chunk.last_line}] "
            f"does not fit a corpus of {corpus.n_sentences} sentences"
        )
    term_count: Counter[str] = Counter()
    doc_freq: Counter[str] = Counter()
    total_tokens = 0
    n_docs = 0
    for _, raw in iter_sentences(corpus, chunk):
        toks = tokenize(normalize(raw))
        n_docs += 1
        total_tokens += len(toks)
        term_count.update(toks)
        doc_freq.update(set(toks))
    if n_docs != chunk.n_sentences:
        raise CorpusError(
            f"chunk {chunk.index}: expected {chunk.n_sentences} sentences, "
            f"read {n_docs}; corpus changed since ingest?"
        )
    return ChunkStats(
        chunk=chunk,
        term_count=dict(term_count),
        doc_freq=dict(doc_freq),
        total_tokens=total_tokens,
        n_docs=n_docs,
        corpus_checksum=corpus.checksum,
    )


def save_stats(stats: ChunkStats, destination: str | Path) -> None:
    """Persist ChunkStats as a tab-separated file with a header block."""
    dest = Path(destination)
    c = stats.chunk
    lines = [
        "# stopkit chunk-stats v1",
        f"# chunk_index={c.index} first_line={c.first_line} "
        f"last_line={c.last_line} n_docs={stats.n_docs} "
        f"total_tokens={stats.total_tokens} "
        f"corpus_sha256={stats.corpus_checksum}",
    ]
    for term in sorted(stats.term_count):
        lines.append(f"{term}\t{stats.term_count[term]}\t{stats.doc_freq[term]}")
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_stats(source: str | Path) -> ChunkStats:
    """Load ChunkStats previously written by save_stats."""
    src = Path(source)
    term_count: dict[str, int] = {}
    doc_freq: dict[str, int] = {}
    header: dict[str, str] = {}
    with src.open("r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                for part in line.lstrip("# ").split():
                    if "=" in part:
                        key, val = part.split("=", 1)
                        header[key] = val
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise CorpusError(f"{src}:{line_no}: expected 3 tab-separated fields")
            term, count, dfreq = fields
            term_count[term] = int(count)
            doc_freq[term] = int(dfreq)
    try:
        chunk = ChunkDescriptor(
            index=int(header["chunk_index"]),
            first_line=int(header["first_line"]),
            last_line=int(header["last_line"]),
            n_sentences=int(header["last_line"]) - int(header["first_line"]) + 1,
        )
        return ChunkStats(
            chunk=chunk,
            term_count=term_count,
            doc_freq=doc_freq,
            total_tokens=int(header["total_tokens"]),
            n_docs=int(header["n_docs"]),
            corpus_checksum=header.get("corpus_sha256", ""),
        )
    except KeyError as exc:
        raise CorpusError(f"{src}: missing header field {exc}") from exc
