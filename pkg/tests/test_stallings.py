import random

from hypothesis import given, strategies as st

from dcgrowth.stallings import (DoubleCosetGraph, brute_force_canonical, brute_force_double_coset,
                                brute_force_membership, double_coset_canonical_free,
                                double_coset_equal_free, fold_core, intersection_pullback,
                                is_finite_index, membership)
from dcgrowth.words import free_reduce, invert, reduced_words, shortlex_key

from conftest import reduced_words as reduced
from oracles import double_coset_closure, subgroup_closure

a, b = 1, 2
A, B = -1, -2


def test_fold_examples():
    g = fold_core([(a,)], 2)
    assert (g.num_vertices, g.edges) == (1, ((0, a, 0),))
    g = fold_core([(a, a), (b,), (a, b, A)], 2)
    assert g.num_vertices == 2 and is_finite_index(g)
    g = fold_core([], 2)
    assert g.num_vertices == 1 and g.is_trivial()


def test_membership_examples():
    g = fold_core([(a, a), (b,)], 2)
    assert membership(g, (a, a, b))
    assert not membership(g, (a,))
    assert membership(g, ())


def test_finite_index_examples():
    assert not is_finite_index(fold_core([(a,)], 2))
    assert is_finite_index(fold_core([(a,), (b,)], 2))


def test_intersection_examples():
    assert intersection_pullback(fold_core([(a,)], 2), fold_core([(b,)], 2)).is_trivial()
    assert intersection_pullback(fold_core([(a,)], 2), fold_core([(a, a)], 2)) == fold_core([(a, a)], 2)
    assert intersection_pullback(fold_core([(b, a, B)], 2), fold_core([(a,)], 2)).is_trivial()


def test_double_coset_examples():
    A_, B_ = fold_core([(a,)], 2), fold_core([(b,)], 2)
    assert double_coset_equal_free(A_, B_, (a, b), (a, a, a, B, B))
    assert not double_coset_equal_free(A_, B_, (a, b), (b, a))
    assert double_coset_canonical_free(A_, B_, (a, a, a, B, B)) == ()
    assert double_coset_canonical_free(A_, B_, (b, a)) == (b, a)
    assert double_coset_canonical_free(A_, B_, (a, a, b, A, b, b, b)) == (b, A)


subgroup = st.lists(reduced(2, 5).filter(bool), min_size=0, max_size=3)


@given(subgroup, st.integers(0, 2 ** 32))
def test_folding_is_confluent(gens, seed):
    assert fold_core(gens, 2, random.Random(seed)) == fold_core(gens, 2)


@given(subgroup)
def test_core_graph_shape(gens):
    g = fold_core(gens, 2)
    assert g.is_folded() and g.is_core()
    assert all(membership(g, w) for w in gens)
    assert fold_core(g.generators(), 2) == g


@given(subgroup, reduced(2, 6))
def test_membership_matches_brute_force(gens, w):
    # the closure only ever holds genuine members, and detours of three letters
    # past |w| are enough for generators this short
    assert membership(fold_core(gens, 2), w) == (w in subgroup_closure(gens, len(w) + 3))


@given(subgroup, subgroup)
def test_intersection_contains_common_elements(g1, g2):
    C = intersection_pullback(fold_core(g1, 2), fold_core(g2, 2))
    for n in range(5):
        for w in reduced_words(2, n):
            assert membership(C, w) == (membership(fold_core(g1, 2), w) and membership(fold_core(g2, 2), w))


small = st.lists(reduced(2, 3).filter(bool), min_size=1, max_size=2)


@given(small, small, reduced(2, 4), reduced(2, 4))
def test_double_coset_equivalence(ga, gb, h1, h2):
    A_, B_ = fold_core(ga, 2), fold_core(gb, 2)
    assert double_coset_equal_free(A_, B_, h1, h1)
    assert double_coset_equal_free(A_, B_, h1, h2) == double_coset_equal_free(A_, B_, h2, h1)
    # moving by generators stays in the class
    h3 = free_reduce(ga[0] + h1 + invert(gb[-1]))
    assert double_coset_equal_free(A_, B_, h1, h3)
    if double_coset_equal_free(A_, B_, h1, h2):
        assert double_coset_canonical_free(A_, B_, h1) == double_coset_canonical_free(A_, B_, h2)


@given(small, small, reduced(2, 5))
def test_canonical_form_is_shortlex_least(ga, gb, h):
    A_, B_ = fold_core(ga, 2), fold_core(gb, 2)
    rep = double_coset_canonical_free(A_, B_, h)
    assert len(rep) <= len(h)
    assert DoubleCosetGraph(A_, B_, h).accepts(rep)
    members = {m for m in double_coset_closure(ga, gb, h, len(h) + 3) if len(m) <= len(rep)}
    assert rep in members
    assert min(members, key=shortlex_key) == rep
    for n in range(len(rep)):
        assert not any(DoubleCosetGraph(A_, B_, h).accepts(w) for w in reduced_words(2, n))


def test_canonical_matches_brute_force_on_examples():
    for h in [(b, a), (a, a, b, A, b, b, b), (b, b, a, B)]:
        assert brute_force_canonical([(a,)], [(b,)], h) == \
            double_coset_canonical_free(fold_core([(a,)], 2), fold_core([(b,)], 2), h)
