import math

import pytest
from hypothesis import given, strategies as st

from dcgrowth.errors import ConfigInvalid, DegenerateSeries
from dcgrowth.growth import (GrowthSeries, Theorem2Config, double_coset_growth_buffered,
                             double_coset_growth_free, fit_rate, growth_function, theorem1_check,
                             theorem2_experiment)
from dcgrowth.small_cancellation import BallOracle, FreeOracle, make_oracle
from dcgrowth.stallings import fold_core
from dcgrowth.words import free_growth, parse_presentation, reduced_words

from conftest import reduced_words as reduced

F2 = parse_presentation("< a b | >")
a, b = 1, 2


@pytest.mark.parametrize("text, R, counts", [
    ("< a | a >", 3, [1, 1, 1, 1]),
    ("< a b | >", 3, [1, 5, 17, 53]),
    ("< a | a a a a a a a >", 3, [1, 3, 5, 7]),
    ("< x y | x y X Y >", 2, [1, 5, 13]),
])
def test_growth_examples(text, R, counts):
    p = parse_presentation(text)
    assert growth_function(p, make_oracle(p, radius=R + 2), R).counts == counts


def test_z2_closed_form():
    p = parse_presentation("< x y | x y X Y >")
    counts = growth_function(p, BallOracle(p, 8), 4).counts
    assert counts == [2 * r * r + 2 * r + 1 for r in range(5)]


def test_growth_series_validation():
    with pytest.raises(ValueError):
        GrowthSeries([2, 3])
    with pytest.raises(ValueError):
        GrowthSeries([1, 3, 2])


def test_double_coset_examples():
    triv = fold_core([], 2)
    full = fold_core([(a,), (b,)], 2)
    A, B = fold_core([(a,)], 2), fold_core([(b,)], 2)
    assert double_coset_growth_free(2, triv, triv, 3).counts == [free_growth(2, r) for r in range(4)]
    assert double_coset_growth_free(2, A, B, 3).counts == [1, 1, 5, 13]
    assert double_coset_growth_free(2, full, full, 3).counts == [1, 1, 1, 1]


def constrained_ends(R):
    """Reduced words with no a-letter first and no b-letter last."""
    out, total = [], 0
    for n in range(R + 1):
        total += sum(1 for w in reduced_words(2, n)
                     if not w or (abs(w[0]) != a and abs(w[-1]) != b))
        out.append(total)
    return out


def test_constrained_ends_count():
    A, B = fold_core([(a,)], 2), fold_core([(b,)], 2)
    assert double_coset_growth_free(2, A, B, 6).counts == constrained_ends(6)


def test_fit_rate_examples():
    f2 = [free_growth(2, r) for r in range(9)]
    assert abs(fit_rate(f2, 3) - 3.0) < 0.01
    assert fit_rate([1, 1, 1, 1], 3) == 1.0
    z = [2 * r + 1 for r in range(9)]
    assert 1.0 < fit_rate(z, 3) < 1.2
    with pytest.raises(ValueError):
        fit_rate(z, 1)
    with pytest.raises(DegenerateSeries):
        fit_rate([0, 0, 0], 2)


subgroup = st.lists(reduced(2, 3).filter(bool), min_size=1, max_size=2)


@given(subgroup, subgroup)
def test_buffered_sound_against_exact(ga, gb):
    exact = double_coset_growth_free(2, fold_core(ga, 2), fold_core(gb, 2), 4).counts
    s = double_coset_growth_buffered(F2, FreeOracle(F2), ga, gb, 4, (0, 1, 2))
    by = s.meta["by_buffer"]
    for r in range(5):
        assert by[0][r] >= by[1][r] >= by[2][r] >= exact[r]
        if s.exact[r]:
            assert s.counts[r] == exact[r] or by[1][r] == by[2][r]


def test_theorem1_z():
    rep = theorem1_check(parse_presentation("< x | >"), R=4)
    assert rep["f_G"] == rep["gr_HNN"] == [1, 3, 5, 7, 9]
    assert rep["passed"] and not rep["beta_violations"]


def test_theorem2_worked_config():
    cfg = Theorem2Config(2, [(a,)], [(b,)], (b, a, -b), (a, b, -a), 2, (a, a, a), (b, b, b))
    rep = theorem2_experiment(cfg)
    assert rep["series"].counts == [1, 1, 5, 13, 41, 121, 365, 1093, 3281]
    assert rep["distinct"] == rep["m"] and rep["collision_factor"] == 1
    counts = rep["series"].counts
    assert all(abs(counts[r + 1] / counts[r] - 3) <= 0.2 for r in range(5, 8))
    assert rep["passed"]


def test_theorem2_rejects_finite_index():
    cfg = Theorem2Config(2, [(a,), (b,)], [(b,)], (b, a, -b), (a, b, -a), 2, (a, a, a), (b, b, b))
    with pytest.raises(ConfigInvalid):
        theorem2_experiment(cfg)
