"""Normalization and tokenization contracts."""

import unicodedata

from hypothesis import given, settings
from hypothesis import strategies as st

from stopkit.normalize import ZWJ, ZWNJ, normalize, segment, tokenize, tokens_of


def test_lowercase_ascii_identity():
    assert normalize("abc") == "abc"


def test_nfc_composition_exclusion():
    # U+0958 is NFC-excluded: canonical form is KA + NUKTA.
    assert normalize("क़") == "क़"


def test_zwnj_removed():
    assert normalize("क‌त") == "कत"


def test_zwj_removed():
    assert normalize("क‍त") == "कत"


def test_whitespace_collapsed_and_stripped():
    assert normalize("  a\t\tb \n c  ") == "a b c"


def test_latin_lowercased_devanagari_untouched():
    assert normalize("ABC घरी") == "abc घरी"


def test_zwnj_removal_exposes_composition():
    # Removing ZWNJ can create a new compose opportunity; output must be NFC.
    raw = "e‌́"
    out = normalize(raw)
    assert out == "é"
    assert unicodedata.is_normalized("NFC", out)


def test_tokenize_whitespace_split():
    assert tokenize("मी घरी जातो") == ["मी", "घरी", "जातो"]


def test_tokenize_strips_punctuation():
    assert tokenize("a, b.") == ["a", "b"]


def test_tokenize_drops_digit_runs():
    assert tokenize(normalize("१२३ शब्द")) == ["शब्द"]
    assert tokenize("123 abc456def 78") == ["abc", "def"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_matras_stay_attached():
    assert tokenize(normalize("घरी जा।तो")) == ["घरी", "जा", "तो"]


def test_segment_reassembles_and_matches_tokenize():
    text = normalize("मी, घरी१२ जातो। ab-cd")
    pieces = segment(text)
    assert "".join(p for p, _ in pieces) == text
    assert [p for p, is_tok in pieces if is_tok] == tokenize(text)


@given(st.text(max_size=200))
@settings(max_examples=300)
def test_normalize_idempotent(text):
    once = normalize(text)
    assert normalize(once) == once


@given(st.text(max_size=200))
@settings(max_examples=300)
def test_token_invariants(text):
    for tok in tokens_of(text):
        assert tok
        assert unicodedata.is_normalized("NFC", tok)
        for ch in tok:
            cat = unicodedata.category(ch)
            assert cat[0] in "LM"
            assert not ch.isspace()
            assert cat != "Nd"
        assert ZWJ not in tok and ZWNJ not in tok


@given(st.text(max_size=200))
@settings(max_examples=300)
def test_tokenize_round_trip_stable(text):
    toks = tokens_of(text)
    assert tokens_of(" ".join(toks)) == toks


@given(st.text(max_size=100), st.text(max_size=100))
@settings(max_examples=300)
def test_concatenation_with_space_boundary(a, b):
    joined = tokens_of(normalize(a) + " " + normalize(b))
    assert joined == tokens_of(a) + tokens_of(b)
