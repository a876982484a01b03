import pytest
from hypothesis import given, strategies as st

from dcgrowth.words import (Presentation, PresentationSyntaxError, alphabet, compact_word,
                            cyclic_reduce, format_presentation, format_word, free_growth,
                            free_reduce, invert, is_cyclically_reduced, is_reduced, multiply,
                            parse_presentation, parse_word, reduced_words, rotations,
                            shortlex_key, shortlex_less, sphere_size)

from conftest import raw_words, reduced_words as reduced

a, b, c, d = 1, 2, 3, 4
A, B = -1, -2


def test_parse_examples():
    p = parse_presentation("< a b | a b A B >")
    assert p.generator_names == ("a", "b")
    assert p.relators == ((a, b, A, B),)
    assert parse_presentation("< a | >").relators == ()
    assert parse_presentation("< a | a a A >").relators == ((a,),)


def test_parse_cyclically_reduces():
    p = parse_presentation("< a b | a b b A >")
    assert p.relators == ((b, b),)


def test_parse_comments_and_long_names():
    p = parse_presentation("# header\n< x1 x2 | x1 x2 x1- x2- > # trailing\n")
    assert p.generator_names == ("x1", "x2")
    assert p.relators == ((1, 2, -1, -2),)
    assert format_word(p.relators[0], p.generator_names) == "x1 x2 x1- x2-"


@pytest.mark.parametrize("text, line, column", [
    ("a b | >", 1, 1),
    ("< a b | a c >", 1, 11),
    ("< a |\n a , A a >", 2, 6),
    ("< a a | >", 1, 5),
    ("< a | a > junk", 1, 11),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_free_reduce_examples():
    assert free_reduce((a, A, b)) == (b,)
    assert free_reduce(()) == ()
    assert free_reduce((a, b, B, A)) == ()


def test_cyclic_reduce_examples():
    assert cyclic_reduce((a, b, A)) == ((a,), (b,))
    assert cyclic_reduce((a, b)) == ((), (a, b))
    assert cyclic_reduce(()) == ((), ())


def test_shortlex_letter_order():
    assert alphabet(2) == [a, A, b, B]
    assert shortlex_less((b,), (a, a))
    assert shortlex_less((a, b), (A, a))


def test_reduced_word_counts():
    for rank in (1, 2, 3):
        for n in range(5):
            words = list(reduced_words(rank, n))
            assert len(words) == sphere_size(rank, n)
            assert words == sorted(words, key=shortlex_key)
            assert all(is_reduced(w) for w in words)
    assert [free_growth(2, r) for r in range(4)] == [1, 5, 17, 53]


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a", "a"), ())
    with pytest.raises(ValueError):
        Presentation(("a",), ((a, A),))
    with pytest.raises(ValueError):
        Presentation(("a",), ((b,),))


def test_compact_and_identity_format():
    assert compact_word((a, b, A, B), "ab") == "abAB"
    assert format_word((), "ab") == "1"
    assert parse_word("1", "ab") == ()
    assert parse_word("a b A", "ab") == parse_word("abA", "ab") == (a, b, A)


@given(raw_words())
def test_free_reduce_idempotent_and_parity(w):
    r = free_reduce(w)
    assert is_reduced(r)
    assert free_reduce(r) == r
    assert len(r) % 2 == len(w) % 2


@given(raw_words())
def test_inverse_cancels(w):
    assert multiply(w, invert(w)) == ()


@given(reduced())
def test_cyclic_reduce_conjugates_back(w):
    p, core = cyclic_reduce(w)
    assert is_cyclically_reduced(core)
    assert free_reduce(p + core + invert(p)) == w


@given(raw_words(), raw_words(), raw_words())
def test_shortlex_is_total_order(u, v, w):
    assert sum([shortlex_less(u, v), shortlex_less(v, u), u == v]) == 1
    if shortlex_less(u, v) and shortlex_less(v, w):
        assert shortlex_less(u, w)


@given(st.lists(reduced(max_size=8).filter(bool).map(lambda w: cyclic_reduce(w)[1]),
                max_size=4))
def test_presentation_roundtrip(rels):
    p = Presentation(("a", "b"), tuple(rels))
    assert parse_presentation(format_presentation(p)) == p


@given(reduced(max_size=10))
def test_word_roundtrip(w):
    assert parse_word(format_word(w, ("a", "b")), ("a", "b")) == w
    assert parse_word(compact_word(w, "ab"), "ab") == w


@given(reduced(max_size=10).filter(bool))
def test_rotations_preserve_length(w):
    rots = list(rotations(w))
    assert len(rots) == len(w)
    assert all(len(r) == len(w) for r in rots)
