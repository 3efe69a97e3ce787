"""Review sessions: candidate queues, durable votes, and verdict aggregation.

A session lives in one directory: a JSON snapshot written once at
creation, plus an append-only vote log. Every acknowledged vote is
fsynced before the call returns, so a crashed service loses nothing it
confirmed. Re-votes are allowed; the latest record per (term, reviewer)
wins.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from ..candidates import CandidateSet
from ..corpus import CorpusHandle, iter_sentences
from ..errors import SessionError
from ..normalize import tokens_of

logger = logging.getLogger(__name__)

MEANING_ALTERED = "meaning_altered"
MEANING_PRESERVED = "meaning_preserved"
JUDGMENTS = (MEANING_ALTERED, MEANING_PRESERVED)

OUTCOME_STOPWORD = "stopword"
OUTCOME_NON_TRIVIAL = "non_trivial"
OUTCOME_UNRESOLVED = "unresolved"

SESSION_FILE = "session.json"
VOTE_LOG = "votes.jsonl"


@dataclass(frozen=True)
class VoteRecord:
    term: str
    reviewer: str
    judgment: str
    recorded_at: str


@dataclass(frozen=True)
class Verdict:
    term: str
    outcome: str
    altered_count: int
    vote_total: int


@dataclass(frozen=True)
class Session:
    """Immutable session snapshot: candidates, reviewers, sampled sentences."""

    id: str
    terms: tuple[str, ...]
    reviewers: tuple[str, ...]
    samples: Mapping[str, tuple[str, ...]]
    created_at: str
    seed: int
    samples_per_term: int
    corpus_checksum: str
    unsampled_terms: tuple[str, ...] = ()


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def non_trivial_threshold(n_reviewers: int) -> int:
    """Altered votes needed to mark a term non-trivial: a strict majority.

    Three reviewers give the two-or-more rule.
    """
    return n_reviewers // 2 + 1


def decide(term: str, judgments: Iterable[str], n_reviewers: int) -> Verdict:
    """Apply the voting rule to one term's current judgments.

    Enough altered votes settle the term as non-trivial even before all
    reviewers have voted (the remaining votes cannot undo a majority);
    otherwise incomplete votes leave it unresolved.
    """
    judgments = list(judgments)
    altered = sum(1 for j in judgments if j == MEANING_ALTERED)
    total = len(judgments)
    if altered >= non_trivial_threshold(n_reviewers):
        outcome = OUTCOME_NON_TRIVIAL
    elif total < n_reviewers:
        outcome = OUTCOME_UNRESOLVED
    else:
        outcome = OUTCOME_STOPWORD
    return Verdict(term=term, outcome=outcome, altered_count=altered, vote_total=total)


def _sample_sentences(
    corpus: CorpusHandle,
    terms: Iterable[str],
    samples_per_term: int,
    seed: int,
) -> dict[str, list[str]]:
    """Reservoir-sample up to samples_per_term containing sentences per term.

    One corpus pass; per-term RNG seeded from (seed, term) so the result
    depends only on the inputs, never on dict ordering.
    """
    term_set = frozenset(terms)
    reservoirs: dict[str, list[str]] = {t: [] for t in term_set}
    seen: dict[str, int] = {t: 0 for t in term_set}
    rngs: dict[str, random.Random] = {
        t: random.Random(f"{seed}:{t}") for t in term_set
    }
    for _, raw in iter_sentences(corpus):
        present = term_set.intersection(tokens_of(raw))
        for t in present:
            seen[t] += 1
            pool = reservoirs[t]
            if len(pool) < samples_per_term:
                pool.append(raw)
            else:
                slot = rngs[t].randrange(seen[t])
                if slot < samples_per_term:
                    pool[slot] = raw
    return reservoirs


def create_session(
    candidates: CandidateSet,
    corpus: CorpusHandle,
    reviewers: Iterable[str],
    samples_per_term: int = 3,
    seed: int = 42,
    *,
    store_root: str | Path,
    session_id: str | None = None,
    created_at: str | None = None,
) -> "ReviewSession":
    """Build and persist a review session over a candidate set.

    Sample sentences are chosen deterministically from the corpus; a term
    with no containing sentence is flagged and proceeds without samples.
    """
    terms = tuple(candidates.terms)
    reviewers = tuple(reviewers)
    if not terms:
        raise SessionError("candidate set is empty")
    if not reviewers:
        raise SessionError("at least one reviewer required")
    if len(set(reviewers)) != len(reviewers):
        raise SessionError("reviewer ids must be distinct")
    if samples_per_term < 0:
        raise SessionError("samples_per_term must be >= 0")

    samples = _sample_sentences(corpus, terms, samples_per_term, seed)
    unsampled = tuple(t for t in terms if not samples[t])
    if unsampled:
        logger.warning(
            "%d candidate term(s) have no containing sentence: %s",
            len(unsampled),
            ", ".join(unsampled[:10]),
        )

    if session_id is None:
        digest = hashlib.sha256(
            json.dumps(
                [list(terms), list(reviewers), samples_per_term, seed, corpus.checksum],
                ensure_ascii=False,
            ).encode("utf-8")
        ).hexdigest()
        session_id = f"sess-{digest[:12]}"

    meta = Session(
        id=session_id,
        terms=terms,
        reviewers=reviewers,
        samples={t: tuple(samples[t]) for t in terms},
        created_at=created_at if created_at is not None else _utcnow(),
        seed=seed,
        samples_per_term=samples_per_term,
        corpus_checksum=corpus.checksum,
        unsampled_terms=unsampled,
    )

    root = Path(store_root)
    session_dir = root / session_id
    session_dir.mkdir(parents=True, exist_ok=True)
    snapshot = {
        "format": "stopkit-session v1",
        "id": meta.id,
        "created_at": meta.created_at,
        "seed": meta.seed,
        "samples_per_term": meta.samples_per_term,
        "reviewers": list(meta.reviewers),
        "terms": list(meta.terms),
        "samples": {t: list(meta.samples[t]) for t in meta.terms},
        "corpus_checksum": meta.corpus_checksum,
        "unsampled_terms": list(meta.unsampled_terms),
    }
    (session_dir / SESSION_FILE).write_text(
        json.dumps(snapshot, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    (session_dir / VOTE_LOG).touch()
    return ReviewSession(session_dir)


class ReviewSession:
    """A persisted session plus its live vote state.

    Vote writes and verdict reads are serialized by a lock; the vote log
    is append-only and replayed on open, so concurrent reviewers and
    abrupt restarts both leave the vote set intact.
    """

    def __init__(self, session_dir: str | Path):
        self.dir = Path(session_dir)
        snapshot_path = self.dir / SESSION_FILE
        if not snapshot_path.exists():
            raise SessionError(f"no session snapshot at {snapshot_path}")
        raw = json.loads(snapshot_path.read_text(encoding="utf-8"))
        self.meta = Session(
            id=raw["id"],
            terms=tuple(raw["terms"]),
            reviewers=tuple(raw["reviewers"]),
            samples={t: tuple(s) for t, s in raw["samples"].items()},
            created_at=raw["created_at"],
            seed=raw["seed"],
            samples_per_term=raw["samples_per_term"],
            corpus_checksum=raw.get("corpus_checksum", ""),
            unsampled_terms=tuple(raw.get("unsampled_terms", [])),
        )
        self._lock = threading.Lock()
        self._votes: dict[tuple[str, str], VoteRecord] = {}
        self._replay_log()
        self._log = (self.dir / VOTE_LOG).open("a", encoding="utf-8")

    def _replay_log(self) -> None:
        log_path = self.dir / VOTE_LOG
        if not log_path.exists():
            return
        with log_path.open("r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    rec = VoteRecord(
                        term=entry["term"],
                        reviewer=entry["reviewer"],
                        judgment=entry["judgment"],
                        recorded_at=entry["recorded_at"],
                    )
                except (json.JSONDecodeError, KeyError) as exc:
                    raise SessionError(
                        f"{log_path}:{line_no}: corrupt vote entry: {exc}"
                    ) from exc
                self._votes[(rec.term, rec.reviewer)] = rec

    def close(self) -> None:
        self._log.close()

    @property
    def terms(self) -> tuple[str, ...]:
        return self.meta.terms

    @property
    def reviewers(self) -> tuple[str, ...]:
        return self.meta.reviewers

    def record_vote(self, reviewer: str, term: str, judgment: str) -> VoteRecord:
        """Store one judgment durably; a re-vote supersedes the old one."""
        if reviewer not in self.meta.reviewers:
            raise SessionError(f"unknown reviewer: {reviewer}")
        if term not in self.meta.samples:
            raise SessionError(f"unknown term: {term}")
        if judgment not in JUDGMENTS:
            raise SessionError(
                f"invalid judgment {judgment!r}; expected one of {JUDGMENTS}"
            )
        rec = VoteRecord(
            term=term, reviewer=reviewer, judgment=judgment, recorded_at=_utcnow()
        )
        line = json.dumps(
            {
                "term": rec.term,
                "reviewer": rec.reviewer,
                "judgment": rec.judgment,
                "recorded_at": rec.recorded_at,
            },
            ensure_ascii=False,
        )
        with self._lock:
            self._log.write(line + "\n")
            self._log.flush()
            os.fsync(self._log.fileno())
            self._votes[(term, reviewer)] = rec
        return rec

    def votes_for(self, reviewer: str) -> dict[str, VoteRecord]:
        with self._lock:
            return {
                term: rec
                for (term, rev), rec in self._votes.items()
                if rev == reviewer
            }

    def verdicts(self) -> list[Verdict]:
        """Current verdict per term, in session order, from a consistent snapshot."""
        with self._lock:
            votes = dict(self._votes)
        by_term: dict[str, list[str]] = {}
        for (term, _), rec in votes.items():
            by_term.setdefault(term, []).append(rec.judgment)
        n = len(self.meta.reviewers)
        return [decide(term, by_term.get(term, ()), n) for term in self.meta.terms]

    def final_stopwords(self) -> list[str]:
        """Terms resolved as stopwords, in session order."""
        return [v.term for v in self.verdicts() if v.outcome == OUTCOME_STOPWORD]

    def progress(self) -> dict[str, int]:
        """Votes cast per reviewer."""
        with self._lock:
            counts = {r: 0 for r in self.meta.reviewers}
            for (_, reviewer) in self._votes:
                counts[reviewer] += 1
        return counts


def record_vote(
    session: ReviewSession, reviewer: str, term: str, judgment: str
) -> VoteRecord:
    return session.record_vote(reviewer, term, judgment)


def aggregate(session: ReviewSession) -> tuple[list[Verdict], list[str]]:
    """All verdicts plus the final stopword list (resolved terms only)."""
    verdicts = session.verdicts()
    final = [v.term for v in verdicts if v.outcome == OUTCOME_STOPWORD]
    return verdicts, final


def open_session(store_root: str | Path, session_id: str) -> ReviewSession:
    return ReviewSession(Path(store_root) / session_id)


def list_sessions(store_root: str | Path) -> list[str]:
    root = Path(store_root)
    if not root.exists():
        return []
    return sorted(
        p.name for p in root.iterdir() if (p / SESSION_FILE).exists()
    )
