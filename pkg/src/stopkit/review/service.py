"""HTTP front end for review sessions.

Reviewers pull their candidate queue, post judgments, and watch
progress; verdicts are computed server-side only. Sentences are shipped
pre-segmented with the term's tokens marked, so clients highlight with
the exact tokenization the pipeline used and never re-implement it.
"""

from __future__ import annotations

import logging
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..errors import SessionError
from ..normalize import normalize, segment
from .store import JUDGMENTS, ReviewSession, list_sessions, open_session

logger = logging.getLogger(__name__)


class SampleSpan(BaseModel):
    text: str
    match: bool


class CandidateCard(BaseModel):
    term: str
    position: int
    samples: list[list[SampleSpan]]
    my_judgment: Optional[str] = None


class ReviewerProgress(BaseModel):
    reviewer: str
    voted: int
    total: int


class CandidatePage(BaseModel):
    session: str
    reviewer: str
    cards: list[CandidateCard]
    next_after: Optional[str] = None
    remaining: int
    progress: ReviewerProgress


class VoteRequest(BaseModel):
    reviewer: str
    term: str
    judgment: str = Field(description="meaning_altered or meaning_preserved")


class VoteResponse(BaseModel):
    term: str
    reviewer: str
    judgment: str
    recorded_at: str


class ProgressResponse(BaseModel):
    session: str
    reviewers: list[ReviewerProgress]
    n_candidates: int
    resolved: int
    unresolved: int


class VerdictModel(BaseModel):
    term: str
    outcome: str
    altered_count: int
    vote_total: int


class VerdictsResponse(BaseModel):
    session: str
    verdicts: list[VerdictModel]


class ResultResponse(BaseModel):
    session: str
    stopwords: list[str]
    n_resolved: int
    n_unresolved: int


class SessionInfo(BaseModel):
    id: str
    reviewers: list[str]
    n_candidates: int
    created_at: str


class _Registry:
    """Opens sessions lazily and keeps them cached for the app's lifetime."""

    def __init__(self, root: Path):
        self.root = root
        self._open: dict[str, ReviewSession] = {}
        self._lock = threading.Lock()

    def get(self, session_id: str) -> ReviewSession:
        with self._lock:
            sess = self._open.get(session_id)
            if sess is None:
                try:
                    sess = open_session(self.root, session_id)
                except SessionError as exc:
                    raise HTTPException(status_code=404, detail=str(exc)) from exc
                self._open[session_id] = sess
            return sess


def _sample_spans(sentence: str, term: str) -> list[SampleSpan]:
    return [
        SampleSpan(text=piece, match=is_token and piece == term)
        for piece, is_token in segment(normalize(sentence))
    ]


def create_app(store_root: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    """Build the review service over a session store directory."""
    root = Path(store_root)
    if not root.exists():
        raise SessionError(f"session store not found: {root}")
    registry = _Registry(root)
    app = FastAPI(title="stopkit review service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/sessions", response_model=list[SessionInfo])
    def sessions() -> list[SessionInfo]:
        infos = []
        for sid in list_sessions(root):
            sess = registry.get(sid)
            infos.append(
                SessionInfo(
                    id=sid,
                    reviewers=list(sess.reviewers),
                    n_candidates=len(sess.terms),
                    created_at=sess.meta.created_at,
                )
            )
        return infos

    @app.get("/session/{session_id}", response_model=SessionInfo)
    def session_info(session_id: str) -> SessionInfo:
        sess = registry.get(session_id)
        return SessionInfo(
            id=session_id,
            reviewers=list(sess.reviewers),
            n_candidates=len(sess.terms),
            created_at=sess.meta.created_at,
        )

    @app.get("/session/{session_id}/candidates", response_model=CandidatePage)
    def candidates(
        session_id: str,
        reviewer: str = Query(...),
        after: Optional[str] = Query(default=None),
        limit: int = Query(default=20, ge=1, le=500),
        include_voted: bool = Query(default=False),
    ) -> CandidatePage:
        sess = registry.get(session_id)
        if reviewer not in sess.reviewers:
            raise HTTPException(status_code=400, detail=f"unknown reviewer: {reviewer}")
        terms = sess.terms
        start = 0
        if after is not None:
            if after not in sess.meta.samples:
                raise HTTPException(status_code=400, detail=f"unknown term: {after}")
            start = terms.index(after) + 1
        voted = sess.votes_for(reviewer)
        queue = [
            (pos, term)
            for pos, term in enumerate(terms)
            if pos >= start and (include_voted or term not in voted)
        ]
        page = queue[:limit]
        cards = [
            CandidateCard(
                term=term,
                position=pos,
                samples=[
                    _sample_spans(s, term) for s in sess.meta.samples[term]
                ],
                my_judgment=(voted[term].judgment if term in voted else None),
            )
            for pos, term in page
        ]
        return CandidatePage(
            session=session_id,
            reviewer=reviewer,
            cards=cards,
            next_after=page[-1][1] if len(queue) > len(page) else None,
            remaining=len(queue) - len(page),
            progress=ReviewerProgress(
                reviewer=reviewer, voted=len(voted), total=len(terms)
            ),
        )

    @app.post("/session/{session_id}/votes", response_model=VoteResponse)
    def post_vote(session_id: str, vote: VoteRequest) -> VoteResponse:
        sess = registry.get(session_id)
        if vote.judgment not in JUDGMENTS:
            raise HTTPException(
                status_code=422,
                detail=f"invalid judgment {vote.judgment!r}; expected one of {JUDGMENTS}",
            )
        try:
            rec = sess.record_vote(vote.reviewer, vote.term, vote.judgment)
        except SessionError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return VoteResponse(
            term=rec.term,
            reviewer=rec.reviewer,
            judgment=rec.judgment,
            recorded_at=rec.recorded_at,
        )

    @app.get("/session/{session_id}/progress", response_model=ProgressResponse)
    def progress(session_id: str) -> ProgressResponse:
        sess = registry.get(session_id)
        counts = sess.progress()
        verdicts = sess.verdicts()
        unresolved = sum(1 for v in verdicts if v.outcome == "unresolved")
        return ProgressResponse(
            session=session_id,
            reviewers=[
                ReviewerProgress(reviewer=r, voted=counts[r], total=len(sess.terms))
                for r in sess.reviewers
            ],
            n_candidates=len(sess.terms),
            resolved=len(verdicts) - unresolved,
            unresolved=unresolved,
        )

    @app.get("/session/{session_id}/verdicts", response_model=VerdictsResponse)
    def verdicts(session_id: str) -> VerdictsResponse:
        sess = registry.get(session_id)
        return VerdictsResponse(
            session=session_id,
            verdicts=[
                VerdictModel(
                    term=v.term,
                    outcome=v.outcome,
                    altered_count=v.altered_count,
                    vote_total=v.vote_total,
                )
                for v in sess.verdicts()
            ],
        )

    @app.get("/session/{session_id}/result", response_model=ResultResponse)
    def result(session_id: str) -> ResultResponse:
        sess = registry.get(session_id)
        verdicts = sess.verdicts()
        stop = [v.term for v in verdicts if v.outcome == "stopword"]
        unresolved = sum(1 for v in verdicts if v.outcome == "unresolved")
        return ResultResponse(
            session=session_id,
            stopwords=stop,
            n_resolved=len(verdicts) - unresolved,
            n_unresolved=unresolved,
        )

    if ui_dir is not None:
        ui_path = Path(ui_dir)
        if not ui_path.is_dir():
            raise SessionError(f"UI directory not found: {ui_path}")
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")

    return app


def serve(
    store_root: str | Path,
    host: str = "127.0.0.1",
    port: int = 8000,
    ui_dir: str | Path | None = None,
) -> None:
    """Run the review service until interrupted."""
    import uvicorn

    app = create_app(store_root, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
