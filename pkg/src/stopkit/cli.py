"""Command-line interface: every pipeline stage as a subcommand.

Intermediate artifacts are plain files in an output directory so long
corpus runs can resume per chunk and every stage can be inspected or
re-run by hand. `pipeline` chains ingest, chunk, score and intersect
through exactly the same file formats the individual stages use.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import corpus as corpus_mod
from . import datagen, evaluate, stopwords, tfidf
from .candidates import CandidateSet, export_candidates, intersect, load_candidate_set
from .errors import StopkitError
from .review import aggregate as aggregate_votes
from .review import create_session, list_sessions, open_session

logger = logging.getLogger(__name__)

DEFAULT_OUT_ENV = "STOPKIT_OUT"
DEFAULT_SEED = 42


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out_dir or os.environ.get(DEFAULT_OUT_ENV, "stopkit-out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _print_json(payload: object) -> None:
    print(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2))


def _handle_to_dict(handle: corpus_mod.CorpusHandle) -> dict:
    return {
        "path": str(handle.path),
        "n_sentences": handle.n_sentences,
        "byte_len": handle.byte_len,
        "checksum": handle.checksum,
        "n_blank_lines": handle.n_blank_lines,
    }


def cmd_ingest(args: argparse.Namespace) -> int:
    handle = corpus_mod.ingest(args.corpus)
    out = _out_dir(args)
    manifest = {
        "provenance": {"tool": "stopkit", "command": "ingest"},
        **_handle_to_dict(handle),
    }
    (out / "corpus.json").write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    if args.format == "json":
        _print_json(manifest)
    else:
        print(
            f"ingested {handle.path}: {handle.n_sentences} sentences, "
            f"{handle.byte_len} bytes, {handle.n_blank_lines} blank line(s) skipped"
        )
        print(f"sha256 {handle.checksum}")
    return 0


def cmd_chunk(args: argparse.Namespace) -> int:
    handle = corpus_mod.ingest(args.corpus)
    spans = corpus_mod.chunk(handle, args.chunks)
    out = _out_dir(args)
    payload = {
        "provenance": {
            "tool": "stopkit",
            "command": "chunk",
            "n_chunks": args.chunks,
            "corpus_checksum": handle.checksum,
        },
        "chunks": [
            {
                "index": s.index,
                "first_line": s.first_line,
                "last_line": s.last_line,
                "n_sentences": s.n_sentences,
            }
            for s in spans
        ],
    }
    (out / "chunks.json").write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    if args.format == "json":
        _print_json(payload)
    else:
        sizes = [s.n_sentences for s in spans]
        print(
            f"{handle.n_sentences} sentences into {args.chunks} chunks: "
            f"sizes {min(sizes)}..{max(sizes)}"
        )
    return 0


def _candidates_name(index: int) -> str:
    return f"chunk-{index:03d}.candidates.txt"


def _scores_name(index: int) -> str:
    return f"chunk-{index:03d}.scores.tsv"


def _score_one(
    handle: corpus_mod.CorpusHandle,
    desc: corpus_mod.ChunkDescriptor,
    config: tfidf.ScoringConfig,
    out_dir: str,
    save_stats: bool,
) -> str:
    stats = corpus_mod.chunk_stats(handle, desc)
    scored = tfidf.score_terms(stats, config)
    bottom = tfidf.bottom_k(scored, config)
    out = Path(out_dir)
    tfidf.write_candidates(bottom, out / _candidates_name(desc.index), config, handle.checksum)
    tfidf.write_scores(bottom, out / _scores_name(desc.index), config, handle.checksum)
    if save_stats:
        corpus_mod.save_stats(stats, out / f"chunk-{desc.index:03d}.stats.tsv")
    return _candidates_name(desc.index)


def _run_scoring(
    handle: corpus_mod.CorpusHandle,
    spans: list[corpus_mod.ChunkDescriptor],
    config: tfidf.ScoringConfig,
    out: Path,
    jobs: int,
    save_stats: bool,
) -> None:
    if jobs > 1 and len(spans) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_score_one, handle, desc, config, str(out), save_stats)
                for desc in spans
            ]
            for fut in futures:
                fut.result()
    else:
        for desc in spans:
            _score_one(handle, desc, config, str(out), save_stats)


def cmd_score(args: argparse.Namespace) -> int:
    handle = corpus_mod.ingest(args.corpus)
    spans = corpus_mod.chunk(handle, args.chunks)
    if args.chunk is not None:
        if not 0 <= args.chunk < len(spans):
            raise StopkitError(f"--chunk must be in [0, {len(spans) - 1}]")
        spans = [spans[args.chunk]]
    config = tfidf.ScoringConfig(k=args.k, min_df=args.min_df)
    out = _out_dir(args)
    _run_scoring(handle, spans, config, out, args.jobs, args.save_stats)
    for desc in spans:
        print(out / _candidates_name(desc.index))
    return 0


def _intersect_files(paths: list[Path], min_chunks: int | None) -> CandidateSet:
    lists = []
    score_maps = []
    for p in paths:
        terms = tfidf.read_candidates(p)
        lists.append(terms)
        scores_path = p.with_name(p.name.replace(".candidates.txt", ".scores.tsv"))
        if scores_path != p and scores_path.exists():
            score_maps.append({e.term: e.score for e in tfidf.read_scores(scores_path)})
        else:
            score_maps.append({})
    return intersect(lists, scores=score_maps, min_chunks=min_chunks)


def cmd_intersect(args: argparse.Namespace) -> int:
    paths = [Path(p) for p in args.candidates]
    cset = _intersect_files(paths, args.min_chunks)
    header = {"k": args.k, "min_df": args.min_df} if args.k else {}
    sidecar = export_candidates(cset, args.out, header=header or None)
    print(f"{len(cset.terms)} common terms -> {args.out} (+ {sidecar.name})")
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    handle = corpus_mod.ingest(args.corpus)
    manifest = {
        "provenance": {"tool": "stopkit", "command": "pipeline"},
        **_handle_to_dict(handle),
    }
    (out / "corpus.json").write_text(
        json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    spans = corpus_mod.chunk(handle, args.chunks)
    config = tfidf.ScoringConfig(k=args.k, min_df=args.min_df)
    _run_scoring(handle, spans, config, out, args.jobs, args.save_stats)
    paths = [out / _candidates_name(desc.index) for desc in spans]
    cset = _intersect_files(paths, args.min_chunks)
    dest = out / "candidates.txt"
    export_candidates(
        cset,
        dest,
        header={
            "k": args.k,
            "min_df": args.min_df,
            "corpus_sha256": handle.checksum,
        },
    )
    print(
        f"pipeline done: {len(spans)} chunk lists, "
        f"{len(cset.terms)} common terms -> {dest}"
    )
    return 0


def cmd_session_new(args: argparse.Namespace) -> int:
    handle = corpus_mod.ingest(args.corpus)
    cset = load_candidate_set(args.candidates)
    reviewers = [r.strip() for r in args.reviewers.split(",") if r.strip()]
    store = Path(args.store) if args.store else _out_dir(args) / "sessions"
    session = create_session(
        cset,
        handle,
        reviewers,
        samples_per_term=args.samples_per_term,
        seed=args.seed,
        store_root=store,
        session_id=args.id,
        created_at=args.created_at,
    )
    print(f"session {session.meta.id} created in {session.dir}")
    print(
        f"{len(session.terms)} candidates, reviewers: {', '.join(session.reviewers)}"
    )
    if session.meta.unsampled_terms:
        print(f"warning: {len(session.meta.unsampled_terms)} term(s) have no samples")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .review.service import serve

    store = Path(args.store) if args.store else _out_dir(args) / "sessions"
    serve(store, host=args.host, port=args.port, ui_dir=args.ui_dir)
    return 0


def _resolve_session(args: argparse.Namespace) -> tuple[Path, str]:
    store = Path(args.store) if args.store else _out_dir(args) / "sessions"
    if args.session:
        return store, args.session
    ids = list_sessions(store)
    if len(ids) != 1:
        raise StopkitError(
            f"--session required: store {store} holds {len(ids)} session(s)"
        )
    return store, ids[0]


def cmd_aggregate(args: argparse.Namespace) -> int:
    store, session_id = _resolve_session(args)
    session = open_session(store, session_id)
    verdicts, final = aggregate_votes(session)
    unresolved = [v.term for v in verdicts if v.outcome == "unresolved"]
    non_trivial = [v.term for v in verdicts if v.outcome == "non_trivial"]
    if args.format == "json":
        _print_json(
            {
                "session": session_id,
                "verdicts": [
                    {
                        "term": v.term,
                        "outcome": v.outcome,
                        "altered_count": v.altered_count,
                        "vote_total": v.vote_total,
                    }
                    for v in verdicts
                ],
                "stopwords": final,
                "non_trivial": non_trivial,
                "unresolved": unresolved,
            }
        )
    else:
        print(
            f"session {session_id}: {len(final)} stopwords, "
            f"{len(non_trivial)} non-trivial, {len(unresolved)} unresolved"
        )
        for term in final:
            print(term)
    return 0


def cmd_list_export(args: argparse.Namespace) -> int:
    store, session_id = _resolve_session(args)
    session = open_session(store, session_id)
    verdicts, final = aggregate_votes(session)
    if not final:
        raise StopkitError(f"session {session_id} has no resolved stopwords yet")
    pos_tags = {}
    if args.pos_map:
        pos_map = stopwords.load_pos_map(args.pos_map)
        pos_tags = {w: pos_map[w] for w in final if w in pos_map}
    slist = stopwords.StopwordList(
        words=frozenset(final),
        pos_tags=pos_tags,
        provenance={
            "session_id": session_id,
            "corpus_sha256": session.meta.corpus_checksum,
            "config": {
                "seed": session.meta.seed,
                "samples_per_term": session.meta.samples_per_term,
                "reviewers": list(session.meta.reviewers),
            },
            "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    )
    stopwords.save(slist, args.out, fmt=args.fmt)
    unresolved = sum(1 for v in verdicts if v.outcome == "unresolved")
    print(f"{len(slist)} stopwords -> {args.out} ({unresolved} unresolved excluded)")
    return 0


def cmd_remove(args: argparse.Namespace) -> int:
    slist = stopwords.load(args.list)
    n_lines = 0
    with open(args.infile, "r", encoding="utf-8") as src, open(
        args.out, "w", encoding="utf-8", newline="\n"
    ) as dst:
        for line in src:
            dst.write(stopwords.remove_stopwords(line.rstrip("\r\n"), slist) + "\n")
            n_lines += 1
    print(f"{n_lines} line(s) filtered -> {args.out}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    slist = stopwords.load(args.list)
    if args.dataset:
        dataset = evaluate.load_csv(args.dataset, seed=args.seed)
    else:
        dataset = datagen.generate_labeled_dataset(
            n_docs=args.n_docs, seed=args.seed
        ).dataset
    report = evaluate.compare(dataset, slist)
    print(evaluate.report_text(report), end="")
    if args.out:
        Path(args.out).write_text(evaluate.report_json(report), encoding="utf-8")
        print(f"report -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stopkit",
        description="Curate, review, apply, and evaluate stopword lists.",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--out-dir",
            default=None,
            help=f"output directory (default ${DEFAULT_OUT_ENV} or ./stopkit-out)",
        )

    p = sub.add_parser("ingest", help="validate a corpus and record its manifest")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_out(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("chunk", help="split the corpus into equal chunks")
    p.add_argument("--corpus", required=True)
    p.add_argument("--chunks", type=int, default=20)
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_out(p)
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("score", help="score chunks and write bottom-k candidate lists")
    p.add_argument("--corpus", required=True)
    p.add_argument("--chunks", type=int, default=20)
    p.add_argument("--chunk", type=int, default=None, help="score only this chunk index")
    p.add_argument("--k", type=int, default=tfidf.DEFAULT_K)
    p.add_argument("--min-df", type=float, default=tfidf.DEFAULT_MIN_DF)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--save-stats", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("intersect", help="intersect per-chunk candidate lists")
    p.add_argument("candidates", nargs="+", help="chunk candidate files")
    p.add_argument("--out", required=True)
    p.add_argument("--min-chunks", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="recorded in the header")
    p.add_argument("--min-df", type=float, default=None, help="recorded in the header")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("pipeline", help="ingest, chunk, score all, and intersect")
    p.add_argument("--corpus", required=True)
    p.add_argument("--chunks", type=int, default=20)
    p.add_argument("--k", type=int, default=tfidf.DEFAULT_K)
    p.add_argument("--min-df", type=float, default=tfidf.DEFAULT_MIN_DF)
    p.add_argument("--min-chunks", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--save-stats", action="store_true")
    add_out(p)
    p.set_defaults(func=cmd_pipeline)

    p_session = sub.add_parser("session", help="review session management")
    session_sub = p_session.add_subparsers(dest="session_command", required=True)
    p = session_sub.add_parser("new", help="create a review session")
    p.add_argument("--candidates", required=True, help="intersection candidates file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--reviewers", default="r1,r2,r3")
    p.add_argument("--samples-per-term", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--store", default=None, help="session store directory")
    p.add_argument("--id", default=None)
    p.add_argument("--created-at", default=None, help="fixed timestamp for reproducible sessions")
    add_out(p)
    p.set_defaults(func=cmd_session_new)

    p = sub.add_parser("serve", help="run the review HTTP service")
    p.add_argument("--store", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", default=None, help="serve this directory at /")
    add_out(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("aggregate", help="compute verdicts and the final list")
    p.add_argument("--store", default=None)
    p.add_argument("--session", default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    add_out(p)
    p.set_defaults(func=cmd_aggregate)

    p_list = sub.add_parser("list", help="stopword list operations")
    list_sub = p_list.add_subparsers(dest="list_command", required=True)
    p = list_sub.add_parser("export", help="export the final list from a session")
    p.add_argument("--store", default=None)
    p.add_argument("--session", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--fmt", choices=("plain", "structured"), default="structured")
    p.add_argument("--pos-map", default=None, help="tab-separated word/tag file")
    add_out(p)
    p.set_defaults(func=cmd_list_export)

    p = sub.add_parser("remove", help="remove stopwords from a text file")
    p.add_argument("--list", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_remove)

    p = sub.add_parser("eval", help="classification accuracy with vs without the list")
    p.add_argument("--list", required=True)
    p.add_argument("--dataset", default=None, help="CSV with text,label columns")
    p.add_argument("--generate", action="store_true", help="use the built-in generator")
    p.add_argument("--n-docs", type=int, default=2000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (StopkitError, OSError, ValueError) as exc:
        print(f"stopkit {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
