"""Cross-chunk intersection of bottom-k lists into one candidate set."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .tfidf import TermScore


@dataclass(frozen=True)
class ChunkRank:
    """Where a term landed in one chunk's bottom-k list."""

    chunk: int
    rank: int
    score: float | None


@dataclass(frozen=True)
class CandidateSet:
    """Terms surviving the cross-chunk intersection.

    Ordered by mean rank across the chunks each term appeared in
    (most stopword-like first), ties broken lexicographically.
    """

    terms: tuple[str, ...]
    provenance: Mapping[str, tuple[ChunkRank, ...]]
    n_chunks: int
    min_chunks: int


def intersect(
    lists: Sequence[Sequence[str]],
    *,
    scores: Sequence[Mapping[str, float]] | None = None,
    min_chunks: int | None = None,
) -> CandidateSet:
    """Intersect per-chunk candidate lists.

    By default a term must appear in every list; min_chunks relaxes that
    to an m-of-n rule. ``scores`` optionally maps term to score per
    chunk, filling provenance when the inputs came from scored runs.
    """
    n = len(lists)
    if n == 0:
        raise ValueError("no candidate lists supplied")
    if any(len(lst) == 0 for lst in lists):
        raise ValueError("candidate lists must be non-empty")
    m = n if min_chunks is None else min_chunks
    if not 1 <= m <= n:
        raise ValueError(f"min_chunks must be in [1, {n}]")

    ranks: dict[str, list[ChunkRank]] = {}
    for chunk_idx, lst in enumerate(lists):
        score_map = scores[chunk_idx] if scores else {}
        for rank, term in enumerate(lst):
            ranks.setdefault(term, []).append(
                ChunkRank(chunk=chunk_idx, rank=rank, score=score_map.get(term))
            )

    surviving = {t: r for t, r in ranks.items() if len(r) >= m}

    def order_key(term: str) -> tuple[float, str]:
        entries = surviving[term]
        return (sum(e.rank for e in entries) / len(entries), term)

    ordered = tuple(sorted(surviving, key=order_key))
    return CandidateSet(
        terms=ordered,
        provenance={t: tuple(surviving[t]) for t in ordered},
        n_chunks=n,
        min_chunks=m,
    )


def intersect_scored(
    lists: Sequence[Sequence[TermScore]], *, min_chunks: int | None = None
) -> CandidateSet:
    """Intersect in-memory bottom-k outputs, keeping scores in provenance."""
    return intersect(
        [[e.term for e in lst] for lst in lists],
        scores=[{e.term: e.score for e in lst} for lst in lists],
        min_chunks=min_chunks,
    )


def export_candidates(
    cset: CandidateSet,
    destination: str | Path,
    *,
    header: Mapping[str, object] | None = None,
) -> Path:
    """Write the candidate terms plus a structured provenance sidecar.

    The text file holds one term per line in set order; the sidecar
    (same path with a .provenance.json suffix) records every term's
    per-chunk (chunk, rank, score) tuples. Returns the sidecar path.
    """
    if not cset.terms:
        raise ValueError("refusing to export an empty candidate set")
    dest = Path(destination)
    fields = {"n_chunks": cset.n_chunks, "min_chunks": cset.min_chunks}
    if header:
        fields.update(header)
    head = "# stopkit intersection " + " ".join(
        f"{k}={v}" for k, v in fields.items()
    )
    dest.write_text(
        "\n".join([head, *cset.terms]) + "\n", encoding="utf-8"
    )

    sidecar = dest.with_suffix(dest.suffix + ".provenance.json")
    payload = {
        "format": "stopkit-candidates-provenance v1",
        "n_chunks": cset.n_chunks,
        "min_chunks": cset.min_chunks,
        "header": dict(header or {}),
        "terms": [
            {
                "term": t,
                "chunks": [
                    {"chunk": e.chunk, "rank": e.rank, "score": e.score}
                    for e in cset.provenance[t]
                ],
            }
            for t in cset.terms
        ],
    }
    sidecar.write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    return sidecar


def load_candidate_set(source: str | Path) -> CandidateSet:
    """Rebuild a CandidateSet from an exported file, using the sidecar if present."""
    src = Path(source)
    terms = []
    with src.open("r", encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            terms.append(line)
    sidecar = src.with_suffix(src.suffix + ".provenance.json")
    provenance: dict[str, tuple[ChunkRank, ...]] = {}
    n_chunks = 0
    min_chunks = 0
    if sidecar.exists():
        payload = json.loads(sidecar.read_text(encoding="utf-8"))
        n_chunks = payload.get("n_chunks", 0)
        min_chunks = payload.get("min_chunks", n_chunks)
        for entry in payload.get("terms", []):
            provenance[entry["term"]] = tuple(
                ChunkRank(chunk=c["chunk"], rank=c["rank"], score=c["score"])
                for c in entry["chunks"]
            )
    return CandidateSet(
        terms=tuple(terms),
        provenance=provenance,
        n_chunks=n_chunks,
        min_chunks=min_chunks,
    )
