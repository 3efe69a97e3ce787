"""Featurization, the deterministic classifier, and the comparison harness."""

import random

import pytest

from oracles import brute_force_nb_predict
from stopkit.datagen import generate_corpus, generate_labeled_dataset
from stopkit.errors import EvalError
from stopkit.evaluate import (
    LabeledDataset,
    compare,
    featurize,
    load_csv,
    make_splits,
    report_json,
    save_csv,
    train_eval,
)
from stopkit.normalize import tokens_of
from stopkit.stopwords import StopwordList


def dataset_from(docs, train, test, val=()):
    return LabeledDataset(
        docs=tuple(docs),
        train_idx=tuple(train),
        test_idx=tuple(test),
        validation_idx=tuple(val),
    )


def test_split_validation():
    docs = [("a", "x"), ("b", "y"), ("c", "x")]
    with pytest.raises(EvalError):
        dataset_from(docs, (0, 1), (1, 2))
    with pytest.raises(EvalError):
        dataset_from(docs, (0,), (1,), (2,))  # single class in train


def test_featurize_counts():
    ds = dataset_from(
        [("a b a", "x"), ("b", "y"), ("c c", "x")], (0, 1), (2,)
    )
    feats = featurize(ds)
    assert feats.vocab == ("a", "b")
    assert feats.doc_counts[0] == {"a": 2, "b": 1}
    assert feats.doc_counts[2] == {}  # out-of-vocabulary only


def test_featurize_applies_removal():
    ds = dataset_from([("a b a", "x"), ("b c", "y")], (0, 1), ())
    feats = featurize(ds, StopwordList(words=frozenset({"a"})))
    assert feats.vocab == ("b", "c")
    assert feats.doc_counts[0] == {"b": 1}


def test_featurize_empty_vocab_rejected():
    ds = dataset_from([("a", "x"), ("a b", "y")], (0, 1), ())
    with pytest.raises(EvalError, match="empty vocabulary"):
        featurize(ds, StopwordList(words=frozenset({"a", "b"})))


def test_separable_classes_perfect_accuracy():
    # Disjoint class vocabularies: naive Bayes must classify perfectly.
    rng = random.Random(1)
    x_words = ["xa", "xb", "xc", "xd"]
    y_words = ["ya", "yb", "yc", "yd"]
    docs = []
    for i in range(60):
        words = x_words if i % 2 == 0 else y_words
        docs.append(
            (" ".join(rng.choice(words) for _ in range(6)), "x" if i % 2 == 0 else "y")
        )
    ds = dataset_from(docs, range(40), range(40, 60))
    assert train_eval(ds, featurize(ds)) == 1.0


def test_random_labels_chance_accuracy():
    rng = random.Random(123)
    vocab = [f"w{c}" for c in "abcdefghij"]
    docs = [
        (
            " ".join(rng.choice(vocab) for _ in range(10)),
            rng.choice(["p", "q"]),
        )
        for _ in range(1200)
    ]
    ds = dataset_from(docs, range(600), range(600, 1200))
    acc = train_eval(ds, featurize(ds))
    assert abs(acc - 0.5) <= 0.05


def test_single_class_train_rejected():
    # The dataset type refuses the degenerate split outright; train_eval
    # keeps its own guard for callers that bypass the constructor.
    docs = [("a b", "x"), ("a c", "x"), ("b c", "y")]
    with pytest.raises(EvalError):
        dataset_from(docs, (0, 1), (2,))
    ds = dataset_from(docs, (0, 2), (1,))
    feats = featurize(ds)
    object.__setattr__(ds, "train_idx", (0, 1))
    with pytest.raises(EvalError, match="single class"):
        train_eval(ds, feats)


def test_classifier_matches_exact_arithmetic_oracle():
    rng = random.Random(31)
    vocab = ["ta", "tb", "tc", "td", "te"]
    for trial in range(20):
        n_train, n_test = rng.randint(4, 12), rng.randint(1, 5)
        docs = []
        for i in range(n_train + n_test):
            label = rng.choice(["x", "y"])
            words = [rng.choice(vocab) for _ in range(rng.randint(1, 6))]
            docs.append((" ".join(words), label))
        train_idx = list(range(n_train))
        if len({docs[i][1] for i in train_idx}) < 2:
            continue
        ds = dataset_from(docs, train_idx, range(n_train, n_train + n_test))
        feats = featurize(ds)
        train_docs = [(tokens_of(docs[i][0]), docs[i][1]) for i in train_idx]
        expected_correct = 0
        for i in ds.test_idx:
            pred = brute_force_nb_predict(train_docs, tokens_of(docs[i][0]), feats.vocab)
            if pred == docs[i][1]:
                expected_correct += 1
        assert train_eval(ds, feats) == pytest.approx(
            expected_correct / n_test, abs=1e-12
        )


def test_generated_dataset_shape():
    gen = generate_labeled_dataset(n_docs=300, seed=5)
    ds = gen.dataset
    assert len(ds.docs) == 300
    assert len(ds.train_idx) == 240
    assert len(ds.test_idx) == 30
    assert len(ds.validation_idx) == 30
    labels = {label for _, label in ds.docs}
    assert labels == {"civic", "misc", "sports"}
    assert gen.signal_token == "pivotmark"
    # Injected stopwords are valid normalized tokens.
    StopwordList(words=frozenset(gen.injected_stopwords))


def test_generated_dataset_deterministic():
    a = generate_labeled_dataset(n_docs=100, seed=9)
    b = generate_labeled_dataset(n_docs=100, seed=9)
    assert a.dataset == b.dataset


def test_compare_null_effect_small():
    gen = generate_labeled_dataset(n_docs=600, seed=2)
    report = compare(gen.dataset, StopwordList(words=frozenset(gen.injected_stopwords)))
    assert abs(report.delta) <= 0.02
    assert report.delta == report.acc_without_stopwords - report.acc_with_stopwords


def test_compare_detects_signal_destruction():
    gen = generate_labeled_dataset(n_docs=600, seed=2)
    report = compare(gen.dataset, StopwordList(words=frozenset({gen.signal_token})))
    assert report.delta <= -0.10


def test_compare_deterministic_bytes():
    gen = generate_labeled_dataset(n_docs=300, seed=4)
    lst = StopwordList(words=frozenset(gen.injected_stopwords))
    a = report_json(compare(gen.dataset, lst))
    b = report_json(compare(gen.dataset, lst))
    assert a.encode() == b.encode()


def test_csv_round_trip(tmp_path):
    gen = generate_labeled_dataset(n_docs=60, seed=3)
    path = tmp_path / "data.csv"
    save_csv(gen.dataset, path)
    loaded = load_csv(path, seed=3)
    assert loaded.docs == gen.dataset.docs


def test_csv_requires_columns(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("body,tag\nhello,x\n", encoding="utf-8")
    with pytest.raises(EvalError, match="text.*label|label.*text"):
        load_csv(p)


def test_make_splits_partition():
    train, test, val = make_splits(101, seed=0)
    assert sorted(train + test + val) == list(range(101))
    assert len(test) == 10


def test_generate_corpus_injection(tmp_path):
    path = generate_corpus(tmp_path / "c.txt", 50, seed=8, inject="सर्वत्र")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 50
    for line in lines:
        assert "सर्वत्र" in tokens_of(line)
