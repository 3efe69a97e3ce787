"""Downstream impact check: does removing a stopword list hurt a classifier?

The classifier is a multinomial naive Bayes with add-one smoothing:
deterministic, no iterative fitting, and sensitive enough to show when a
"stopword" list actually deletes class signal. Accuracies are compared
with and without removal under identical splits.
"""

from __future__ import annotations

import csv
import json
import random
from collections import Counter
from dataclasses import dataclass
from math import log
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import EvalError
from .normalize import tokenize, tokens_of
from .stopwords import StopwordList, remove_stopwords


@dataclass(frozen=True)
class LabeledDataset:
    """Documents with class labels, partitioned into train/test/validation."""

    docs: tuple[tuple[str, str], ...]
    train_idx: tuple[int, ...]
    test_idx: tuple[int, ...]
    validation_idx: tuple[int, ...]

    def __post_init__(self) -> None:
        splits = (self.train_idx, self.test_idx, self.validation_idx)
        seen: set[int] = set()
        count = 0
        for split in splits:
            seen.update(split)
            count += len(split)
        if count != len(self.docs) or seen != set(range(len(self.docs))):
            raise EvalError("splits must partition the documents exactly")
        train_labels = {self.docs[i][1] for i in self.train_idx}
        if len(train_labels) < 2:
            raise EvalError("train split must contain at least 2 classes")


@dataclass(frozen=True)
class Features:
    """Per-document bag-of-words counts over the train-split vocabulary."""

    vocab: tuple[str, ...]
    doc_counts: tuple[Mapping[str, int], ...]


@dataclass(frozen=True)
class EvalReport:
    acc_with_stopwords: float
    acc_without_stopwords: float
    delta: float
    config: Mapping[str, Any]


def featurize(dataset: LabeledDataset, slist: StopwordList | None = None) -> Features:
    """Count tokens per document, restricted to the train-split vocabulary.

    With a stopword list, removal runs before counting, so out-of-list
    tokens are counted over the post-removal vocabulary.
    """
    if slist is None:
        token_lists = [tokens_of(text) for text, _ in dataset.docs]
    else:
        token_lists = [
            tokenize(remove_stopwords(text, slist)) for text, _ in dataset.docs
        ]
    vocab = sorted({t for i in dataset.train_idx for t in token_lists[i]})
    if not vocab:
        raise EvalError("empty vocabulary after stopword removal")
    in_vocab = frozenset(vocab)
    doc_counts = tuple(
        {t: c for t, c in Counter(toks).items() if t in in_vocab}
        for toks in token_lists
    )
    return Features(vocab=tuple(vocab), doc_counts=doc_counts)


def train_eval(dataset: LabeledDataset, features: Features) -> float:
    """Fit multinomial NB on the train split, return test-split accuracy.

    Everything iterates in sorted order so the result is bit-for-bit
    reproducible across runs.
    """
    labels = [dataset.docs[i][1] for i in dataset.train_idx]
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise EvalError("degenerate train split: single class")

    n_train = len(dataset.train_idx)
    class_docs: dict[str, int] = {c: 0 for c in classes}
    class_term: dict[str, Counter[str]] = {c: Counter() for c in classes}
    class_total: dict[str, int] = {c: 0 for c in classes}
    for i in dataset.train_idx:
        _, label = dataset.docs[i]
        counts = features.doc_counts[i]
        class_docs[label] += 1
        class_term[label].update(counts)
        class_total[label] += sum(counts.values())

    v = len(features.vocab)
    log_prior = {c: log(class_docs[c] / n_train) for c in classes}
    denom = {c: class_total[c] + v for c in classes}

    correct = 0
    for i in dataset.test_idx:
        _, label = dataset.docs[i]
        counts = features.doc_counts[i]
        best_class = None
        best_score = float("-inf")
        for c in classes:
            score = log_prior[c]
            terms = class_term[c]
            d = denom[c]
            for t in sorted(counts):
                score += counts[t] * log((terms[t] + 1) / d)
            if score > best_score:
                best_score = score
                best_class = c
        if best_class == label:
            correct += 1
    if not dataset.test_idx:
        raise EvalError("empty test split")
    return correct / len(dataset.test_idx)


def compare(dataset: LabeledDataset, slist: StopwordList) -> EvalReport:
    """Accuracy with vs without stopword removal on identical splits."""
    if not slist.words:
        raise EvalError("stopword list is empty")
    feats_with = featurize(dataset, None)
    feats_without = featurize(dataset, slist)
    acc_with = train_eval(dataset, feats_with)
    acc_without = train_eval(dataset, feats_without)
    return EvalReport(
        acc_with_stopwords=acc_with,
        acc_without_stopwords=acc_without,
        delta=acc_without - acc_with,
        config={
            "n_docs": len(dataset.docs),
            "n_train": len(dataset.train_idx),
            "n_test": len(dataset.test_idx),
            "n_validation": len(dataset.validation_idx),
            "classes": sorted({label for _, label in dataset.docs}),
            "n_stopwords": len(slist.words),
            "vocab_with_stopwords": len(feats_with.vocab),
            "vocab_without_stopwords": len(feats_without.vocab),
        },
    )


def report_json(report: EvalReport) -> str:
    """Machine-readable report; stable bytes for identical inputs."""
    return json.dumps(
        {
            "acc_with_stopwords": report.acc_with_stopwords,
            "acc_without_stopwords": report.acc_without_stopwords,
            "delta": report.delta,
            "config": dict(report.config),
        },
        ensure_ascii=False,
        sort_keys=True,
        indent=2,
    ) + "\n"


def report_text(report: EvalReport) -> str:
    lines = [
        f"accuracy with stopwords    : {report.acc_with_stopwords:.4f}",
        f"accuracy without stopwords : {report.acc_without_stopwords:.4f}",
        f"delta (without - with)     : {report.delta:+.4f}",
    ]
    for key in sorted(report.config):
        lines.append(f"{key}: {report.config[key]}")
    return "\n".join(lines) + "\n"


def make_splits(
    n_docs: int, seed: int, ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Deterministic shuffled train/test/validation index partition."""
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise EvalError("split ratios must sum to 1")
    idx = list(range(n_docs))
    random.Random(seed).shuffle(idx)
    n_train = int(n_docs * ratios[0])
    n_test = int(n_docs * ratios[1])
    return (
        tuple(idx[:n_train]),
        tuple(idx[n_train : n_train + n_test]),
        tuple(idx[n_train + n_test :]),
    )


def load_csv(
    path: str | Path,
    seed: int = 42,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
) -> LabeledDataset:
    """Load a labeled dataset from a UTF-8 CSV with text,label columns."""
    p = Path(path)
    docs: list[tuple[str, str]] = []
    with p.open("r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or not {"text", "label"} <= set(reader.fieldnames):
            raise EvalError(f"{p}: CSV must have 'text' and 'label' columns")
        for row in reader:
            docs.append((row["text"], row["label"]))
    if not docs:
        raise EvalError(f"{p}: no rows")
    train, test, val = make_splits(len(docs), seed, ratios)
    return LabeledDataset(
        docs=tuple(docs), train_idx=train, test_idx=test, validation_idx=val
    )


def save_csv(dataset: LabeledDataset, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["text", "label"])
        for text, label in dataset.docs:
            writer.writerow([text, label])
