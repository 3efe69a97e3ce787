"""Stopword list formats, membership, removal laws, POS categorization."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stopkit.errors import ListFormatError
from stopkit.normalize import tokens_of
from stopkit.stopwords import (
    StopwordList,
    categorize,
    is_stopword,
    load,
    load_pos_map,
    remove_stopwords,
    save,
)


def slist(*words, **kwargs):
    return StopwordList(words=frozenset(words), **kwargs)


def test_construction_validates_words():
    with pytest.raises(ListFormatError):
        slist("ok", "two words")
    with pytest.raises(ListFormatError):
        slist("UPPER")
    with pytest.raises(ListFormatError):
        slist("a.b")
    with pytest.raises(ListFormatError):
        StopwordList(words=frozenset({"ok"}), pos_tags={"other": "PRON"})


def test_plain_round_trip(tmp_path):
    original = slist("आणि", "क", "नाही")
    dest = tmp_path / "stop.txt"
    save(original, dest, fmt="plain")
    assert dest.read_text(encoding="utf-8") == "आणि\nक\nनाही\n"
    loaded = load(dest)
    assert loaded.words == original.words
    assert loaded.pos_tags == {}


def test_structured_round_trip(tmp_path):
    original = slist(
        "आणि",
        "क",
        pos_tags={"आणि": "CONJ"},
        provenance={"session_id": "s1", "corpus_sha256": "ff", "created_at": "t"},
    )
    dest = tmp_path / "stop.tsv"
    save(original, dest)
    loaded = load(dest)
    assert loaded == original


def test_save_empty_rejected(tmp_path):
    with pytest.raises(ListFormatError):
        save(StopwordList(words=frozenset()), tmp_path / "x")


def test_load_duplicate_rejected(tmp_path):
    p = tmp_path / "dup.txt"
    p.write_text("a\na\n", encoding="utf-8")
    with pytest.raises(ListFormatError, match="dup.txt:2: duplicate"):
        load(p)


def test_load_unnormalized_rejected(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("Fine\n", encoding="utf-8")
    with pytest.raises(ListFormatError, match="bad.txt:1"):
        load(p)


def test_is_stopword_membership():
    lst = slist("आणि")
    assert is_stopword(lst, "आणि")
    assert not is_stopword(lst, "घर")
    # Queries normalize first.
    assert is_stopword(slist("the"), "THE")
    assert is_stopword(lst, "आणि‌")


def test_remove_stopwords_examples():
    lst = slist("आणि")
    assert remove_stopwords("अ आणि ब", lst) == "अ ब"
    assert remove_stopwords("", lst) == ""
    assert remove_stopwords("आणि आणि", lst) == ""


def test_remove_drops_punctuation():
    assert remove_stopwords("अ, आणि; ब.", slist("आणि")) == "अ ब"


WORD_ALPHABET = st.sampled_from(list("abcde") + list("कखगघचज"))
WORDS = st.text(alphabet=WORD_ALPHABET, min_size=1, max_size=4)


@given(
    st.lists(WORDS, max_size=30),
    st.sets(WORDS, max_size=8),
)
@settings(max_examples=300)
def test_removal_laws(text_words, list_words):
    text = " ".join(text_words)
    lst = StopwordList(words=frozenset(list_words))
    out = remove_stopwords(text, lst)
    # Idempotence.
    assert remove_stopwords(out, lst) == out
    # Completeness: nothing from the list survives.
    assert not set(tokens_of(out)) & lst.words
    # Order preservation: output is the input token stream minus members.
    expected = [t for t in tokens_of(text) if t not in lst.words]
    assert tokens_of(out) == expected


@given(
    st.lists(WORDS, max_size=30),
    st.sets(WORDS, max_size=8),
    st.sets(WORDS, max_size=4),
)
@settings(max_examples=200)
def test_removal_monotonic_in_list(text_words, base_words, extra_words):
    text = " ".join(text_words)
    smaller = StopwordList(words=frozenset(base_words))
    larger = StopwordList(words=frozenset(base_words | extra_words))
    assert len(tokens_of(remove_stopwords(text, larger))) <= len(
        tokens_of(remove_stopwords(text, smaller))
    )


def test_pos_map_round_trip(tmp_path):
    p = tmp_path / "pos.tsv"
    p.write_text("आणि\tCONJ\nक\tPRON\n", encoding="utf-8")
    assert load_pos_map(p) == {"आणि": "CONJ", "क": "PRON"}


def test_pos_map_malformed(tmp_path):
    p = tmp_path / "pos.tsv"
    p.write_text("आणि CONJ\n", encoding="utf-8")
    with pytest.raises(ListFormatError, match="pos.tsv:1"):
        load_pos_map(p)


def test_categorize_single_bucket():
    lst = slist("अ", "ब", "क")
    assert categorize(lst, {"अ": "PRON", "ब": "PRON", "क": "PRON"}) == {"PRON": 3}


def test_categorize_untagged_default():
    lst = slist("अ", "ब", "क")
    assert categorize(lst, {}) == {"untagged": 3}


def test_categorize_counts_partition():
    lst = slist("अ", "ब", "क")
    counts = categorize(lst, {"अ": "PRON", "ब": "CONJ"})
    assert sum(counts.values()) == 3
    assert counts == {"PRON": 1, "CONJ": 1, "untagged": 1}


def test_four_hundred_word_list_round_trip(tmp_path):
    # A list the size of a realistic curated release.
    rng = random.Random(0)
    consonants = "कखगघचछजझटठडढणतथदधनपफबभमयरलवशषसह"
    words = set()
    while len(words) < 400:
        words.add("".join(rng.choice(consonants) for _ in range(rng.randint(2, 5))))
    lst = StopwordList(words=frozenset(words))
    dest = tmp_path / "big.txt"
    save(lst, dest, fmt="plain")
    assert len(dest.read_text(encoding="utf-8").splitlines()) == 400
    assert load(dest).words == lst.words
