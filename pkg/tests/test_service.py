"""Review service endpoints, end to end over the session store."""

import json
import os
import signal
import socket
import subprocess
import sys
import time

import pytest
from fastapi.testclient import TestClient

from stopkit.candidates import intersect
from stopkit.corpus import ingest
from stopkit.review import MEANING_ALTERED, MEANING_PRESERVED, create_session
from stopkit.review.service import create_app

REVIEWERS = ["r1", "r2", "r3"]


@pytest.fixture
def store(tmp_path):
    lines = ["अ आणि ब", "आणि क", "ब क ड", "अ क आणि"]
    corpus_path = tmp_path / "corpus.txt"
    corpus_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    handle = ingest(corpus_path)
    cset = intersect([["आणि", "क", "ब"]])
    root = tmp_path / "sessions"
    session = create_session(
        cset, handle, REVIEWERS, samples_per_term=2, seed=1, store_root=root,
        session_id="s1",
    )
    session.close()
    return root


@pytest.fixture
def client(store):
    return TestClient(create_app(store))


def test_sessions_listing(client):
    (info,) = client.get("/sessions").json()
    assert info["id"] == "s1"
    assert info["reviewers"] == REVIEWERS
    assert info["n_candidates"] == 3


def test_unknown_session_is_404(client):
    assert client.get("/session/nope/progress").status_code == 404


def test_candidate_queue_order_and_samples(client):
    page = client.get(
        "/session/s1/candidates", params={"reviewer": "r1"}
    ).json()
    assert [c["term"] for c in page["cards"]] == ["आणि", "क", "ब"]
    first = page["cards"][0]
    assert first["my_judgment"] is None
    # Every sample must highlight the term and nothing else.
    for sample in first["samples"]:
        matched = [s["text"] for s in sample if s["match"]]
        assert matched and set(matched) == {"आणि"}
    assert page["progress"] == {"reviewer": "r1", "voted": 0, "total": 3}


def test_queue_skips_voted_terms(client):
    client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "आणि", "judgment": MEANING_PRESERVED},
    )
    page = client.get("/session/s1/candidates", params={"reviewer": "r1"}).json()
    assert [c["term"] for c in page["cards"]] == ["क", "ब"]
    assert page["progress"]["voted"] == 1
    # Another reviewer's queue is unaffected.
    page = client.get("/session/s1/candidates", params={"reviewer": "r2"}).json()
    assert len(page["cards"]) == 3


def test_queue_paging_with_after(client):
    page = client.get(
        "/session/s1/candidates",
        params={"reviewer": "r1", "limit": 1},
    ).json()
    assert [c["term"] for c in page["cards"]] == ["आणि"]
    assert page["next_after"] == "आणि"
    assert page["remaining"] == 2
    page = client.get(
        "/session/s1/candidates",
        params={"reviewer": "r1", "limit": 1, "after": "आणि"},
    ).json()
    assert [c["term"] for c in page["cards"]] == ["क"]


def test_include_voted_returns_judgment(client):
    client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "आणि", "judgment": MEANING_ALTERED},
    )
    page = client.get(
        "/session/s1/candidates",
        params={"reviewer": "r1", "include_voted": "true"},
    ).json()
    card = next(c for c in page["cards"] if c["term"] == "आणि")
    assert card["my_judgment"] == MEANING_ALTERED


def test_vote_write_through(client):
    resp = client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "क", "judgment": MEANING_PRESERVED},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["term"] == "क"
    assert body["judgment"] == MEANING_PRESERVED
    assert body["recorded_at"]


def test_vote_validation_errors(client):
    bad_reviewer = client.post(
        "/session/s1/votes",
        json={"reviewer": "r9", "term": "क", "judgment": MEANING_PRESERVED},
    )
    assert bad_reviewer.status_code == 400
    assert "unknown reviewer" in bad_reviewer.json()["detail"]
    bad_term = client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "घर", "judgment": MEANING_PRESERVED},
    )
    assert bad_term.status_code == 400
    bad_judgment = client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "क", "judgment": "dunno"},
    )
    assert bad_judgment.status_code == 422


def test_partial_aggregation_flags_unresolved(client):
    client.post(
        "/session/s1/votes",
        json={"reviewer": "r1", "term": "क", "judgment": MEANING_PRESERVED},
    )
    verdicts = client.get("/session/s1/verdicts").json()["verdicts"]
    assert all(v["outcome"] == "unresolved" for v in verdicts)
    progress = client.get("/session/s1/progress").json()
    assert progress["unresolved"] == 3
    assert progress["resolved"] == 0


def test_full_flow_result(client):
    votes = {
        "आणि": [MEANING_PRESERVED] * 3,
        "क": [MEANING_ALTERED, MEANING_ALTERED, MEANING_PRESERVED],
        "ब": [MEANING_ALTERED, MEANING_PRESERVED, MEANING_PRESERVED],
    }
    for term, judgments in votes.items():
        for reviewer, judgment in zip(REVIEWERS, judgments):
            client.post(
                "/session/s1/votes",
                json={"reviewer": reviewer, "term": term, "judgment": judgment},
            )
    result = client.get("/session/s1/result").json()
    assert result["stopwords"] == ["आणि", "ब"]
    assert result["n_unresolved"] == 0
    verdicts = {
        v["term"]: v["outcome"]
        for v in client.get("/session/s1/verdicts").json()["verdicts"]
    }
    assert verdicts == {"आणि": "stopword", "क": "non_trivial", "ब": "stopword"}


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def _wait_for(url, timeout=15.0):
    import httpx

    deadline = time.time() + timeout
    while time.time() < deadline:
        try:
            httpx.get(url, timeout=1.0)
            return
        except httpx.TransportError:
            time.sleep(0.1)
    raise TimeoutError(f"service at {url} never came up")


def _spawn_server(store, port):
    code = (
        "import uvicorn, sys\n"
        "from stopkit.review.service import create_app\n"
        f"app = create_app({str(store)!r})\n"
        f"uvicorn.run(app, host='127.0.0.1', port={port}, log_level='error')\n"
    )
    return subprocess.Popen([sys.executable, "-c", code])


def test_kill_and_recover_loses_no_acknowledged_vote(store):
    import httpx

    port = _free_port()
    proc = _spawn_server(store, port)
    base = f"http://127.0.0.1:{port}"
    try:
        _wait_for(f"{base}/sessions")
        for term in ("आणि", "क"):
            resp = httpx.post(
                f"{base}/session/s1/votes",
                json={"reviewer": "r1", "term": term, "judgment": MEANING_ALTERED},
            )
            assert resp.status_code == 200
    finally:
        os.kill(proc.pid, signal.SIGKILL)
        proc.wait()

    proc = _spawn_server(store, port)
    try:
        _wait_for(f"{base}/sessions")
        progress = httpx.get(f"{base}/session/s1/progress").json()
        assert progress["reviewers"][0] == {"reviewer": "r1", "voted": 2, "total": 3}
    finally:
        proc.terminate()
        proc.wait()


def test_create_app_requires_store(tmp_path):
    from stopkit.errors import SessionError

    with pytest.raises(SessionError):
        create_app(tmp_path / "missing")
