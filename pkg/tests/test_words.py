import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from abelsq.factors import ENGINES, FactorIndex, suffix_array
from abelsq.sturmian import fibonacci_prefix
from abelsq.thuemorse import tm_prefix
from abelsq.words import (
    BINARY,
    Alphabet,
    PrefixParikhTable,
    Word,
    distinct_factors,
    factor_complexity,
    factor_parikh,
    infer_alphabet,
    is_abelian_k_power,
    is_abelian_square,
    is_balanced,
    max_power_order,
    parikh,
    period_and_exponent,
    right_special_factors,
)

words_sigma3 = st.integers(1, 3).flatmap(
    lambda s: st.text(alphabet="abc"[:s], min_size=1, max_size=14))


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet.of_size(0)


def test_word_rejects_foreign_letter():
    with pytest.raises(ValueError):
        Word.from_string("abc", BINARY)


def test_word_slicing_and_concatenation():
    w = Word.from_string("abaab")
    assert str(w[1:4]) == "baa"
    assert str(w + w[:2]) == "abaabab"
    assert str(w.reversed()) == "baaba"
    assert str(w.relabel([1, 0])) == "babba"


def test_concatenation_requires_same_alphabet():
    with pytest.raises(ValueError):
        Word.from_string("ab") + Word.from_string("01")


@pytest.mark.parametrize("text, expected", [("abaab", (3, 2)), ("", (0, 0))])
def test_parikh_examples(text, expected):
    assert parikh(Word.from_string(text, BINARY)) == expected


def test_parikh_of_thue_morse_prefix():
    assert parikh(tm_prefix(23)) == (11, 12)


def test_factor_parikh_examples():
    table = PrefixParikhTable("abaab")
    assert factor_parikh(table, 1, 3) == (2, 1)
    assert factor_parikh(table, 2, 0) == (0, 0)
    assert factor_parikh(PrefixParikhTable(tm_prefix(8)), 0, 4) == (2, 2)
    with pytest.raises(IndexError):
        factor_parikh(table, 3, 5)


@given(st.text(alphabet="abc", max_size=20), st.data())
def test_factor_parikh_sums_to_length(text, data):
    table = PrefixParikhTable(Word.from_string(text, Alphabet.of_size(3)))
    i = data.draw(st.integers(0, len(text)))
    m = data.draw(st.integers(0, len(text) - i))
    assert sum(factor_parikh(table, i, m)) == m
    assert factor_parikh(table, i, m) == tuple(text[i:i + m].count(c) for c in "abc")


def test_prefix_table_rows():
    t = PrefixParikhTable("abba").table
    assert t[0].tolist() == [0, 0]
    assert (t.sum(axis=1) == np.arange(5)).all()
    assert (np.diff(t, axis=0) >= 0).all()


@pytest.mark.parametrize("text, k, expected", [
    ("abab", 2, True), ("abba", 2, True), ("aabaab", 2, True), ("aaba", 2, False),
    ("abcbca", 2, True), ("abbaab", 3, True), ("ab", 3, False),
])
def test_abelian_k_power_examples(text, k, expected):
    assert is_abelian_k_power(infer_word(text), k) is expected


def infer_word(text):
    return Word.from_string(text, infer_alphabet(text) if set(text) <= {"a", "b"} else Alphabet.of_size(3))


def test_abelian_power_rejects_small_k_and_empty_word():
    with pytest.raises(ValueError):
        is_abelian_k_power("ab", 1)
    assert not is_abelian_square(Word.from_string("", BINARY))


@given(st.text(alphabet="ab", min_size=1, max_size=16), st.integers(2, 4))
def test_abelian_power_invariant_under_reversal_and_renaming(text, k):
    w = Word.from_string(text, BINARY)
    got = is_abelian_k_power(w, k)
    assert got == is_abelian_k_power(w.reversed(), k)
    assert got == is_abelian_k_power(w.relabel([1, 0]), k)


@pytest.mark.parametrize("text, expected", [("abaab", True), ("aabb", False), ("", True), ("abba", True), ("abbaab", False)])
def test_balanced_examples(text, expected):
    assert is_balanced(Word.from_string(text, BINARY)) is expected


def test_fibonacci_prefixes_are_balanced():
    assert all(is_balanced(fibonacci_prefix(n)) for n in (1, 10, 100, 1000))


def test_balanced_rejects_non_binary():
    with pytest.raises(ValueError):
        is_balanced(Word.from_string("abc", Alphabet.of_size(3)))


@given(st.text(alphabet="ab", max_size=14))
def test_balanced_matches_pairwise_oracle(text):
    assert is_balanced(Word.from_string(text, BINARY)) == oracles.balanced(text)


@pytest.mark.parametrize("text, period, exponent", [
    ("abaab", 3, Fraction(5, 3)), ("aaaa", 1, Fraction(4)), ("abcabc", 3, Fraction(2)),
])
def test_period_examples(text, period, exponent):
    assert period_and_exponent(infer_word(text)) == (period, exponent)


@settings(max_examples=200)
@given(st.text(alphabet="ab", min_size=1, max_size=64))
def test_period_is_least_naive_period(text):
    p, e = period_and_exponent(text)
    assert p == oracles.least_period(text)
    assert e == Fraction(len(text), p)
    assert all(text[i] == text[i % p] for i in range(len(text)))


@pytest.mark.parametrize("text, expected", [("aaa", Fraction(3)), ("ababa", Fraction(5, 2)), ("ab", Fraction(1))])
def test_max_power_order_examples(text, expected):
    assert max_power_order(text) == expected


def test_thue_morse_is_overlap_free():
    assert max_power_order(tm_prefix(256)) == 2


@given(st.text(alphabet="ab", min_size=1, max_size=12))
def test_max_power_order_matches_oracle(text):
    best = max(Fraction(j - i, oracles.least_period(text[i:j]))
               for i in range(len(text)) for j in range(i + 1, len(text) + 1))
    assert max_power_order(text) == best


def test_right_special_examples():
    w = Word.from_string("aab")
    assert {f.text(w) for f in right_special_factors(w, 1)} == {"a"}
    fib = fibonacci_prefix(200)
    assert len(right_special_factors(fib, 6)) == 1


@given(st.text(alphabet="ab", min_size=2, max_size=30), st.integers(1, 6))
def test_right_special_matches_oracle(text, m):
    if m >= len(text):
        return
    w = Word.from_string(text, BINARY)
    assert {f.text(w) for f in right_special_factors(w, m)} == oracles.right_special(text, m)


def test_distinct_factor_examples():
    assert {f.text(Word.from_string("aaaa")) for f in distinct_factors("aaaa", 2)} == {"aa"}
    fib = fibonacci_prefix(200)
    got = {f.text(fib) for f in distinct_factors(fib, 6)}
    assert got == {"babaab", "baabab", "baabaa", "ababaa", "abaaba", "aababa", "aabaab"}
    assert factor_complexity(tm_prefix(64), 2) == 4


def test_factor_ids_point_at_leftmost_occurrences():
    w = Word.from_string("abab")
    assert sorted(distinct_factors(w, 2)) == [(0, 2), (1, 2)]


@pytest.mark.parametrize("engine", ENGINES)
@settings(max_examples=300)
@given(text=words_sigma3)
def test_dedup_engines_match_string_sets(engine, text):
    w = Word.from_string(text, Alphabet.of_size(3))
    for m in range(1, len(text) + 1):
        assert {f.text(w) for f in distinct_factors(w, m, engine)} == oracles.factors(text, m)


@pytest.mark.parametrize("sigma, n_max", [(2, 10), (3, 7)])
def test_dedup_exhaustive_small_words(sigma, n_max):
    alpha = Alphabet.of_size(sigma)
    for n in range(1, n_max + 1):
        for tup in itertools.product(alpha.names, repeat=n):
            text = "".join(tup)
            w = Word.from_string(text, alpha)
            index = FactorIndex(w.symbols)
            for m in range(1, n + 1):
                assert np.unique(index.classes(m)).size == len(oracles.factors(text, m))


def test_hash_engine_survives_forced_collisions(monkeypatch):
    import abelsq.factors as fx
    monkeypatch.setattr(fx, "_B1", 1)
    monkeypatch.setattr(fx, "_B2", 1)  # every anagram collides; verification must split them
    w = Word.from_string("abbaabab")
    for m in range(1, 9):
        got = {f.text(w) for f in distinct_factors(w, m, "hash")}
        assert got == oracles.factors("abbaabab", m)


def test_suffix_array_orders_suffixes():
    text = "abaababaab"
    sa = suffix_array(Word.from_string(text).symbols)
    assert [text[i:] for i in sa] == sorted(text[i:] for i in range(len(text)))


def test_unknown_engine_rejected():
    with pytest.raises(ValueError):
        FactorIndex(np.zeros(3, dtype=np.uint8), engine="bloom")
