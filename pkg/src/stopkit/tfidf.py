"""Term scoring: TF, DF, IDF and per-chunk bottom-k candidate extraction.

A term's chunk score is its chunk-aggregate term frequency times the
natural log of the reciprocal of its sentence-level document frequency.
Terms present in every sentence score exactly zero, which is what pushes
stopwords to the bottom of the ranking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import ChunkStats

DEFAULT_K = 5000
DEFAULT_MIN_DF = 0.001


@dataclass(frozen=True)
class TermScore:
    term: str
    tf: float
    df: float
    idf: float
    score: float


@dataclass(frozen=True)
class ScoringConfig:
    """Knobs for per-chunk scoring.

    min_df floors the document-frequency fraction: without it, hapax
    legomena (tiny tf, huge idf) flood the bottom of the ranking and the
    cross-chunk intersection collapses. The log base is fixed to e; any
    base yields the same ranking.
    """

    k: int = DEFAULT_K
    min_df: float = DEFAULT_MIN_DF
    log_base: float = math.e

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.min_df < 1.0:
            raise ValueError("min_df must be in [0, 1)")
        if self.log_base != math.e:
            raise ValueError("log base is fixed to e")


def tf(count: int, total: int) -> float:
    """Term frequency: occurrences over total tokens."""
    if total < 1:
        raise ValueError("total must be >= 1")
    if not 0 <= count <= total:
        raise ValueError("count must be in [0, total]")
    return count / total


def df(docs_containing: int, n_docs: int) -> float:
    """Document frequency: containing-document fraction."""
    if n_docs < 1:
        raise ValueError("n_docs must be >= 1")
    if not 0 <= docs_containing <= n_docs:
        raise ValueError("docs_containing must be in [0, n_docs]")
    return docs_containing / n_docs


def idf(df_value: float) -> float:
    """Inverse document frequency: ln(1/df). Zero for ubiquitous terms."""
    if df_value <= 0.0:
        raise ValueError("idf undefined for df <= 0 (term absent from corpus)")
    if df_value > 1.0:
        raise ValueError("df is a fraction and cannot exceed 1")
    return math.log(1.0 / df_value)


def score_terms(stats: ChunkStats, config: ScoringConfig) -> list[TermScore]:
    """Score every term of a chunk, ascending by score.

    TF is chunk-aggregate (term occurrences over the chunk's total
    tokens); DF is sentence-level. Terms below the min_df floor are
    dropped. Ties break by doc_freq descending, then by term code
    points, so the ordering is fully deterministic.
    """
    if not stats.term_count:
        raise ValueError("empty chunk stats")
    doc_freq = stats.doc_freq
    out = []
    for term, count in stats.term_count.items():
        d = df(doc_freq[term], stats.n_docs)
        if d < config.min_df:
            continue
        t = tf(count, stats.total_tokens)
        i = idf(d)
        out.append(TermScore(term=term, tf=t, df=d, idf=i, score=t * i))
    out.sort(key=lambda s: (s.score, -doc_freq[s.term], s.term))
    return out


def bottom_k(scores: list[TermScore], config: ScoringConfig) -> list[TermScore]:
    """First min(k, len) entries of an ascending score list."""
    return list(scores[: config.k])


def write_candidates(
    entries: list[TermScore],
    destination: str | Path,
    config: ScoringConfig,
    corpus_checksum: str,
) -> None:
    """Write a per-chunk candidate list: header comment, one term per line."""
    dest = Path(destination)
    lines = [
        f"# stopkit candidates k={config.k} min_df={config.min_df} "
        f"corpus_sha256={corpus_checksum}"
    ]
    lines.extend(e.term for e in entries)
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_candidates(source: str | Path) -> list[str]:
    """Read a candidate list written by write_candidates, keeping order."""
    terms = []
    with Path(source).open("r", encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            terms.append(line)
    return terms


def write_scores(
    entries: list[TermScore],
    destination: str | Path,
    config: ScoringConfig,
    corpus_checksum: str,
) -> None:
    """Write the scored bottom-k as TSV so provenance survives the file hop."""
    dest = Path(destination)
    lines = [
        f"# stopkit scores k={config.k} min_df={config.min_df} "
        f"corpus_sha256={corpus_checksum}",
        "# term\ttf\tdf\tidf\tscore",
    ]
    for e in entries:
        lines.append(f"{e.term}\t{e.tf!r}\t{e.df!r}\t{e.idf!r}\t{e.score!r}")
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_scores(source: str | Path) -> list[TermScore]:
    """Read a TSV written by write_scores."""
    out = []
    with Path(source).open("r", encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            term, t, d, i, s = line.split("\t")
            out.append(
                TermScore(term=term, tf=float(t), df=float(d), idf=float(i), score=float(s))
            )
    return out
