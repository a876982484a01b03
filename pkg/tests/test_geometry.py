from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dcgrowth.errors import NoneQualify, NotFound
from dcgrowth.geometry import (QuasiParams, SeparatorPair, find_separators, free_length,
                               gromov_product, is_quasigeodesic, is_quasigeodesic_free,
                               large_products, product_table, select_connector)
from dcgrowth.small_cancellation import distance_function, make_oracle
from dcgrowth.words import invert, parse_presentation

from conftest import raw_words, reduced_words

F2 = parse_presentation("< a b | >")
w = F2.word
STRICT = QuasiParams(1, 0)


@pytest.fixture(scope="module")
def sep():
    return find_separators(F2, free_length, 3, 0)


def test_gromov_examples():
    f3 = parse_presentation("< a b c | >")
    assert gromov_product(w("aaa"), w("bbb")) == 0
    assert gromov_product(f3.word("ab"), f3.word("ac")) == 1
    assert gromov_product(w("abab"), w("aba")) == 3


def test_quasigeodesic_examples():
    assert is_quasigeodesic(w("abAB"), STRICT)
    assert not is_quasigeodesic((1, -1), STRICT)
    assert is_quasigeodesic((1, -1), QuasiParams(1, 2))
    with pytest.raises(ValueError):
        QuasiParams(Fraction(1, 2), 0)


def test_separator_examples(sep):
    assert (sep.x, sep.y) == (w("aaa"), w("bbb"))
    assert len(sep.product_table) == 12 and set(sep.product_table.values()) == {0}
    small = find_separators(F2, free_length, 1, 0)
    assert (small.x, small.y) == (w("a"), w("b"))
    with pytest.raises(NotFound):
        find_separators(parse_presentation("< a | >"), free_length, 1, 0)


def test_connector_examples(sep):
    assert select_connector(w("ba"), w("Ab"), sep, STRICT) == w("bbb")
    assert select_connector((), (), sep, STRICT) == w("aaa")
    assert select_connector(w("aaaaa"), w("aaaaa"), sep, STRICT) == w("aaa")


def test_connector_failure_certificate():
    lone = SeparatorPair((1,), (1, 1), 1, Fraction(0), {})
    # every candidate either backtracks against u or against v
    with pytest.raises(NoneQualify) as info:
        select_connector((1,), (-1,), lone, STRICT)
    assert len(info.value.detail["certificates"]) == 4


def test_calibrated(sep):
    assert sep.calibrated() == QuasiParams(1, 12)


@given(reduced_words(), reduced_words())
def test_gromov_symmetric_and_bounded(u, v):
    g = gromov_product(u, v)
    assert g == gromov_product(v, u)
    assert 0 <= g <= min(len(u), len(v))


@given(raw_words(max_size=10), st.fractions(1, 3), st.fractions(0, 4), st.fractions(0, 2), st.fractions(0, 2))
def test_quasigeodesic_monotone(word, eps, eta, de, dn):
    q, weaker = QuasiParams(eps, eta), QuasiParams(eps + de, eta + dn)
    assert weaker.weaker_or_equal(q)
    if is_quasigeodesic(word, q):
        assert is_quasigeodesic(word, weaker)
    assert is_quasigeodesic_free(word, q) == is_quasigeodesic(word, q)


@given(reduced_words(max_size=12), reduced_words(max_size=12))
def test_connector_always_found(u, v):
    s = find_separators(F2, free_length, 3, 0)
    z = select_connector(u, v, s, s.calibrated())
    assert z in s.candidates
    assert is_quasigeodesic(u + z + v, s.calibrated())


@given(reduced_words(max_size=12))
def test_at_most_one_large_product(u):
    s = find_separators(F2, free_length, 3, 0)
    assert len(large_products(u, s)) <= 1


def test_distance_in_cyclic_group():
    c7 = parse_presentation("< a | a a a a a a a >")
    dist = distance_function(make_oracle(c7), 7)
    assert gromov_product((1,) * 4, (1,) * 3, dist) == Fraction(3 + 3 - 1, 2)
    assert product_table([(1,), (-1,)], dist) == {((1,), (-1,)): 0, ((-1,), (1,)): 0}


def test_separators_in_surface_group():
    g = parse_presentation("< a b c d | a b A B c d C D >")
    dist = distance_function(make_oracle(g), 6)
    s = find_separators(g, dist, 2, 0)
    assert dist(s.x) == len(s.x) and dist(s.y) == len(s.y)
    assert all(v <= 0 for v in s.product_table.values())
    assert invert(s.x) != s.y
