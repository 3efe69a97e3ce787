"""Seeded generators for corpora and labeled datasets.

No data blobs ship with the package; everything regenerates exactly from
a seed. The labeled generator builds a 3-class setup with known ground
truth: a set of injected filler words distributed identically across
classes (safe to remove), and a pivot token that alone separates two of
the classes (removing it provably destroys signal).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .evaluate import LabeledDataset, make_splits

_DEV_CONSONANTS = "कखगघचछजझटठडढणतथदधनपफबभमयरलवशषसह"
_DEV_MATRAS = ("", "ा", "ि", "ी", "ु", "ू", "े", "ै", "ो", "ौ")

# Class layout: "civic" docs carry the pivot token, "misc" docs carry no
# marker at all, "sports" docs carry their own marker. civic and misc
# differ only by the pivot, so dropping it collapses the two classes.
CLASSES = ("civic", "misc", "sports")
PIVOT_TOKEN = "pivotmark"
CLASS_MARKERS: Mapping[str, str] = {"civic": PIVOT_TOKEN, "sports": "sportsmark"}


@dataclass(frozen=True)
class GeneratedDataset:
    dataset: LabeledDataset
    injected_stopwords: tuple[str, ...]
    class_markers: Mapping[str, str]
    signal_token: str


def _alpha_suffix(i: int) -> str:
    # base-26 letters only; generated tokens must never contain digits
    digits = []
    i, rem = divmod(i, 26)
    digits.append(chr(ord("a") + rem))
    while i:
        i, rem = divmod(i, 26)
        digits.append(chr(ord("a") + rem))
    return "".join(reversed(digits))


def generate_labeled_dataset(
    n_docs: int = 2000,
    seed: int = 0,
    n_stopwords: int = 20,
    n_filler: int = 150,
    stopword_rate: float = 0.35,
    doc_len: tuple[int, int] = (8, 20),
) -> GeneratedDataset:
    """Build the 3-class corpus with injected stopwords and a pivot marker."""
    rng = random.Random(seed)
    stop_words = tuple(f"stop{_alpha_suffix(i)}" for i in range(n_stopwords))
    filler = [f"filler{_alpha_suffix(i)}" for i in range(n_filler)]

    docs: list[tuple[str, str]] = []
    for i in range(n_docs):
        label = CLASSES[i % len(CLASSES)]
        length = rng.randint(*doc_len)
        toks = [
            rng.choice(stop_words) if rng.random() < stopword_rate else rng.choice(filler)
            for _ in range(length)
        ]
        marker = CLASS_MARKERS.get(label)
        if marker is not None:
            toks.insert(rng.randrange(length + 1), marker)
        docs.append((" ".join(toks), label))

    train, test, val = make_splits(n_docs, seed)
    dataset = LabeledDataset(
        docs=tuple(docs), train_idx=train, test_idx=test, validation_idx=val
    )
    return GeneratedDataset(
        dataset=dataset,
        injected_stopwords=stop_words,
        class_markers=dict(CLASS_MARKERS),
        signal_token=PIVOT_TOKEN,
    )


def _devanagari_vocab(rng: random.Random, size: int) -> list[str]:
    words: list[str] = []
    seen = set()
    while len(words) < size:
        n_syllables = rng.randint(1, 3)
        word = "".join(
            rng.choice(_DEV_CONSONANTS) + rng.choice(_DEV_MATRAS)
            for _ in range(n_syllables)
        )
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words


def generate_corpus(
    destination: str | Path,
    n_sentences: int,
    seed: int = 0,
    inject: str | None = None,
    vocab_size: int = 800,
    sentence_len: tuple[int, int] = (4, 14),
) -> Path:
    """Write a one-sentence-per-line synthetic Devanagari corpus.

    Word frequencies follow a Zipf-like 1/rank law so a bottom-score
    ranking has natural ubiquitous words. With ``inject`` set, that token
    is inserted into every sentence at a random position.
    """
    if n_sentences < 1:
        raise ValueError("n_sentences must be >= 1")
    dest = Path(destination)
    rng = random.Random(seed)
    vocab = _devanagari_vocab(rng, vocab_size)
    weights = [1.0 / rank for rank in range(1, vocab_size + 1)]
    with dest.open("w", encoding="utf-8", newline="\n") as f:
        for _ in range(n_sentences):
            length = rng.randint(*sentence_len)
            words = rng.choices(vocab, weights=weights, k=length)
            if inject is not None:
                words.insert(rng.randrange(len(words) + 1), inject)
            line = " ".join(words)
            if rng.random() < 0.5:
                line += "।"
            f.write(line + "\n")
    return dest
