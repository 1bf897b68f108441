import pytest
from hypothesis import given, strategies as st

from oracles import fixpoint_reduce, inverse_str
from transeq.words import (
    Alphabet,
    AlphabetMismatch,
    Letter,
    ParseError,
    Word,
    concat,
    invert,
    parse,
    power,
    reduce,
)

from conftest import F2, F3, w2, w3

raw_letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=30)


def raw_str(codes):
    return "".join(chr(96 + x) if x > 0 else chr(64 - x) for x in codes)


@pytest.mark.parametrize(
    "text, expected, length",
    [("abA", "abA", 3), ("aA", "", 0), ("abBAab", "ab", 2), ("", "", 0), (" a b ", "ab", 2)],
)
def test_parse(text, expected, length):
    w = parse(text, F2)
    assert str(w) == expected
    assert w.length() == length


def test_parse_error_names_character_and_position():
    with pytest.raises(ParseError) as exc:
        parse("abx", F2)
    assert exc.value.position == 2
    assert "'x'" in str(exc.value)
    with pytest.raises(ParseError):
        parse("a-b", F2)


@pytest.mark.parametrize("rank", [1, 27])
def test_alphabet_bounds(rank):
    with pytest.raises(ValueError):
        Alphabet(rank)


def test_word_rejects_unreduced_and_foreign_letters():
    with pytest.raises(ValueError):
        Word((1, -1), F2)
    with pytest.raises(ValueError):
        Word((3,), F2)


def test_reduce_examples():
    assert str(reduce([1, -1, 2], F2)) == "b"
    assert str(reduce([], F2)) == ""
    assert str(reduce([1, 2, -2, 2], F2)) == "ab"
    assert str(reduce([Letter(0, 1), Letter(1, -1)], F2)) == "aB"


def test_letter_round_trip():
    for code in (1, -1, 2, -3):
        assert Letter.from_code(code).code == code
    assert str(Letter(1, -1)) == "B"


def test_concat_examples():
    assert str(concat(w2("ab"), w2("Ba"))) == "aa"
    assert concat(w2("abA"), w2("")) == w2("abA")
    assert str(concat(w2("ab"), w2("BA"))) == ""


def test_concat_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        concat(w2("a"), w3("a"))


def test_invert_examples():
    assert str(invert(w2("ab"))) == "BA"
    assert str(invert(w2(""))) == ""
    assert str(invert(w2("aBa"))) == "AbA"


def test_power_examples():
    assert str(power(w2("ab"), 2)) == "abab"
    assert str(power(w2("abA"), 3)) == "abbbA"
    assert power(w2("aBBa"), -1) == invert(w2("aBBa"))
    assert power(w2("ab"), 0) == w2("")


def test_operators():
    u, v = w2("ab"), w2("Ba")
    assert u * v == concat(u, v)
    assert ~u == invert(u)
    assert u**3 == power(u, 3)


@given(raw_letters)
def test_reduce_matches_fixpoint_oracle(codes):
    w = reduce(codes, F3)
    assert str(w) == fixpoint_reduce(raw_str(codes))
    assert reduce(w.letters, F3) == w


@given(raw_letters, raw_letters)
def test_concat_length_bound_and_parity(a, b):
    u, v = reduce(a, F3), reduce(b, F3)
    uv = concat(u, v)
    assert len(uv) <= len(u) + len(v)
    assert (len(u) + len(v) - len(uv)) % 2 == 0
    assert str(uv) == fixpoint_reduce(str(u) + str(v))


@given(raw_letters, raw_letters, raw_letters)
def test_concat_associative(a, b, c):
    u, v, w = (reduce(x, F3) for x in (a, b, c))
    assert concat(concat(u, v), w) == concat(u, concat(v, w))


@given(raw_letters, raw_letters)
def test_invert_involution_and_anti_homomorphism(a, b):
    u, v = reduce(a, F3), reduce(b, F3)
    assert invert(invert(u)) == u
    assert invert(concat(u, v)) == concat(invert(v), invert(u))
    assert not concat(u, invert(u))
    assert str(invert(u)) == inverse_str(str(u))


@given(raw_letters, st.integers(-4, 4))
def test_power_matches_repeated_concatenation(a, e):
    u = reduce(a, F3)
    base = str(u) if e >= 0 else inverse_str(str(u))
    assert str(power(u, e)) == fixpoint_reduce(base * abs(e))
