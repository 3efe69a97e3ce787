"""stopkit: curate stopword lists from raw corpora and measure their impact.

The pipeline: ingest a one-sentence-per-line corpus, split it into equal
chunks, rank each chunk's terms by TF-IDF ascending, keep every chunk's
bottom k, intersect across chunks, and put the surviving candidates in
front of human reviewers. The reviewed list is then applied and
evaluated against a deterministic text classifier.
"""

from .candidates import CandidateSet, export_candidates, intersect, intersect_scored
from .corpus import (
    ChunkDescriptor,
    ChunkStats,
    CorpusHandle,
    chunk,
    chunk_spans,
    chunk_stats,
    ingest,
)
from .errors import (
    CorpusError,
    EvalError,
    ListFormatError,
    SessionError,
    StopkitError,
)
from .evaluate import EvalReport, LabeledDataset, compare, featurize, train_eval
from .normalize import normalize, tokenize, tokens_of
from .stopwords import StopwordList, is_stopword, remove_stopwords
from .tfidf import ScoringConfig, TermScore, bottom_k, df, idf, score_terms, tf

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "ChunkDescriptor",
    "ChunkStats",
    "CorpusError",
    "CorpusHandle",
    "EvalError",
    "EvalReport",
    "LabeledDataset",
    "ListFormatError",
    "ScoringConfig",
    "SessionError",
    "StopkitError",
    "StopwordList",
    "TermScore",
    "bottom_k",
    "chunk",
    "chunk_spans",
    "chunk_stats",
    "compare",
    "df",
    "export_candidates",
    "featurize",
    "idf",
    "ingest",
    "intersect",
    "intersect_scored",
    "is_stopword",
    "normalize",
    "remove_stopwords",
    "score_terms",
    "tf",
    "tokenize",
    "tokens_of",
    "train_eval",
]
