from fractions import Fraction

import pytest

from dcgrowth.errors import BudgetExhausted
from dcgrowth.rips import beta_image, build_rips, n_generators, rips_presentation
from dcgrowth.small_cancellation import DehnOracle, check_metric_condition, symmetrize
from dcgrowth.words import free_reduce, is_cyclically_reduced, parse_presentation

from oracles import metric_by_prefixes

FREE1 = parse_presentation("< x | >")
TRIVIAL = parse_presentation("< x | x >")
Z2 = parse_presentation("< a b | a b A B >")


@pytest.fixture(scope="module")
def rips_free1():
    return build_rips(FREE1)


def test_relator_counts(rips_free1):
    assert rips_free1.result.generator_names == ("x", "t1", "t2")
    assert len(rips_free1.result.relators) == 4
    assert len(rips_presentation(TRIVIAL, 4)[0].relators) == 5
    assert len(rips_presentation(Z2, 4)[0].relators) == 9


def test_certificate(rips_free1):
    h = rips_free1.result
    per = rips_free1.certificate.per_relator
    assert all(6 * per[i] < len(r) for i, r in enumerate(h.relators))
    assert check_metric_condition(symmetrize(h), Fraction(1, 6))
    assert metric_by_prefixes(h, Fraction(1, 6))


def test_exponent_intervals_disjoint():
    _, constants = rips_presentation(Z2, 8)
    starts = sorted(k[2:] for k in constants if k[0] in "ace")
    intervals = []
    for lo_name, hi_name in (("a", "b"), ("c", "d"), ("e", "f")):
        for k, v in constants.items():
            if k.startswith(lo_name + "_"):
                intervals.append((v, constants[hi_name + k[1:]]))
    intervals.sort()
    assert len(intervals) == len(starts) == 9
    for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
        assert lo1 <= hi1 < lo2 <= hi2


def test_beta_examples():
    m = 1
    x, t1, t2 = 1, 2, 3
    assert beta_image((x, t1, -t2, x), m) == (x, x)
    assert beta_image((t1, t2, -t1), m) == ()
    assert beta_image((t1,), m) == beta_image((t2,), m) == ()


@pytest.mark.parametrize("g", [FREE1, TRIVIAL, Z2])
def test_beta_kills_conjugation_relators(g):
    h, _ = rips_presentation(g, 2)
    m = g.rank
    images = [beta_image(r, m) for r in h.relators]
    assert images[len(g.relators):] == [()] * (4 * m)
    assert images[:len(g.relators)] == [free_reduce(r) for r in g.relators]
    assert all(is_cyclically_reduced(r) for r in h.relators)


def test_n_generators(rips_free1):
    assert n_generators(rips_free1) == {(2,), (3,)}


def test_dehn_oracle_accepts_result(rips_free1):
    o = DehnOracle(rips_free1.result)
    for r in rips_free1.result.relators:
        assert o.is_trivial(r)


def test_report_json(rips_free1):
    rep = rips_free1.to_json()
    assert rep["run_length"] == 32
    assert rep["generator_map"] == {"x": "x", "t1": "1", "t2": "1"}
    assert rep["constants"]["c_11"] < rep["constants"]["d_11"]


def test_budget_reports_failure():
    with pytest.raises(BudgetExhausted) as info:
        build_rips(FREE1, max_run_length=4)
    assert info.value.detail["run_length"] == 4


def test_name_clash():
    g = parse_presentation("< t1 t2 | t1 t2 >")
    h = build_rips(g).result
    assert len(set(h.generator_names)) == 4


def test_lambda_range():
    with pytest.raises(ValueError):
        build_rips(FREE1, lam=Fraction(1, 5))
