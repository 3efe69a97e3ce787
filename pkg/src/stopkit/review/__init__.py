"""Human review of candidate stopwords: sessions, votes, verdicts, HTTP API."""

from .store import (
    JUDGMENTS,
    MEANING_ALTERED,
    MEANING_PRESERVED,
    OUTCOME_NON_TRIVIAL,
    OUTCOME_STOPWORD,
    OUTCOME_UNRESOLVED,
    ReviewSession,
    Session,
    Verdict,
    VoteRecord,
    aggregate,
    create_session,
    list_sessions,
    open_session,
    record_vote,
)

__all__ = [
    "JUDGMENTS",
    "MEANING_ALTERED",
    "MEANING_PRESERVED",
    "OUTCOME_NON_TRIVIAL",
    "OUTCOME_STOPWORD",
    "OUTCOME_UNRESOLVED",
    "ReviewSession",
    "Session",
    "Verdict",
    "VoteRecord",
    "aggregate",
    "create_session",
    "list_sessions",
    "open_session",
    "record_vote",
]
