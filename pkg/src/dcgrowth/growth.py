"""Growth functions of groups and of double cosets, plus the two experiment harnesses:
kernel double cosets of a Rips group, and the free-group lower bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cayley import Ball, enumerate_ball
from .errors import ConfigInvalid, DegenerateSeries, SeparatorFailure, NoneQualify
from .geometry import QuasiParams, SeparatorPair, product_table, select_connector
from .rips import beta_image, build_rips
from .small_cancellation import DehnOracle, make_oracle
from .stallings import DoubleCosetGraph, fold_core, intersection_pullback, is_finite_index
from .unionfind import UnionFind
from .words import free_growth, free_reduce, invert, power, reduced_words


@dataclass
class GrowthSeries:
    counts: list
    exact: list = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.exact is None:
            self.exact = [True] * len(self.counts)
        if len(self.exact) != len(self.counts):
            raise ValueError("counts and exact flags differ in length")
        if self.counts and self.counts[0] != 1:
            raise ValueError("counts[0] must be 1")
        if any(a > b for a, b in zip(self.counts, self.counts[1:])):
            raise ValueError("counts must be nondecreasing")

    @property
    def radii(self):
        return range(len(self.counts))

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, r):
        return self.counts[r]

    def rows(self):
        return [(r, c, e) for r, c, e in zip(self.radii, self.counts, self.exact)]


def growth_function(p, o, R, deadline=None):
    """f(r) = number of elements of length <= r, r = 0..R."""
    ball = enumerate_ball(p, o, R, deadline)
    return GrowthSeries(ball.counts(), meta={"presentation": str(p), "oracle": o.method})


def fit_rate(series, window):
    """Geometric mean of counts[r+1]/counts[r] over the last ``window`` radii."""
    counts = list(series.counts if isinstance(series, GrowthSeries) else series)
    if window < 2:
        raise ValueError("window must be >= 2")
    if len(counts) < window:
        raise ValueError(f"series has {len(counts)} entries, window needs {window}")
    tail = counts[-window:]
    if any(c <= 0 for c in tail):
        raise DegenerateSeries("series has zero counts in the fit window")
    return math.exp(sum(math.log(b / a) for a, b in zip(tail, tail[1:])) / (window - 1))


# -- double cosets ----------------------------------------------------------


def double_coset_growth_free(rank, A, B, R):
    """Exact gr(F_rank, A, B)(r): ShortLex-least class representatives of length <= r."""
    per_length = [0] * (R + 1)
    for n in range(R + 1):
        for w in reduced_words(rank, n):
            if DoubleCosetGraph(A, B, w).shortlex_least() == w:
                per_length[n] += 1
    counts, total = [], 0
    for c in per_length:
        total += c
        counts.append(total)
    return GrowthSeries(counts, meta={"backend": "free", "rank": rank})


def _generator_letters(gens):
    out = []
    for g in gens:
        g = free_reduce(g)
        if g:
            out.extend([g, invert(g)])
    return out


def _buffered_counts(ball, genA, genB, R):
    elements = ball.elements
    uf = UnionFind(elements)
    left, right = _generator_letters(genA), _generator_letters(genB)
    for v in elements:
        for g in left:
            w = ball.locate(g + v)
            if w is not None:
                uf.union(v, w)
        for g in right:
            w = ball.locate(v + g)
            if w is not None:
                uf.union(v, w)
    counts, seen = [], set()
    for r in range(R + 1):
        for v in ball.layers[r]:
            seen.add(uf.find(v))
        counts.append(len(seen))
    return counts


def double_coset_growth_buffered(p, o, genA, genB, R, buffers=(0, 1, 2, 3), deadline=None):
    """Upper bounds on gr(G, A, B)(r) from union-find on balls of radius R + buffer.

    Only genuine equalities are merged, so every count is an upper bound.
    ``exact[r]`` records agreement between the last two buffers.  The series
    for every buffer is kept in ``meta["by_buffer"]``.
    """
    buffers = sorted(buffers)
    if not buffers:
        raise ValueError("need at least one buffer")
    ball = Ball(p, o, deadline)
    by_buffer = {}
    for b in buffers:
        ball.grow(R + b)
        by_buffer[b] = _buffered_counts(_Restricted(ball, R + b), genA, genB, R)
    last = by_buffer[buffers[-1]]
    prev = by_buffer[buffers[-2]] if len(buffers) > 1 else None
    exact = [prev is not None and prev[r] == last[r] for r in range(R + 1)]
    return GrowthSeries(last, exact, meta={"backend": "buffered", "buffers": buffers,
                                           "by_buffer": by_buffer})


class _Restricted:
    """View of a ball cut at a smaller radius."""

    def __init__(self, ball, radius):
        self.ball = ball
        self.radius = radius
        self.layers = ball.layers[:radius + 1]

    @property
    def elements(self):
        return [w for layer in self.layers for w in layer]

    def locate(self, w):
        e = self.ball.locate(w)
        if e is None or len(e) > self.radius:
            return None
        return e


# -- kernel double cosets of the Rips group ------------------------------------


def theorem1_check(g, oracle_G=None, R=4, buffers=(0, 1, 2), lam=Fraction(1, 6),
                   initial_run_length=1, deadline=None):
    """Rips H over G; compare gr(H, N, N) with f_G radius by radius.

    gr(H, N, N)(r) is counted exactly as the number of distinct images under
    beta (erase t-letters) of the radius-r ball of H, since N = ker beta.  The
    buffered union-find count is an independent upper bound.
    """
    oracle_G = oracle_G or make_oracle(g, radius=R + 2)
    rips = build_rips(g, lam, initial_run_length)
    h = rips.result
    oracle_H = DehnOracle(h)
    ball_G = enumerate_ball(g, oracle_G, R, deadline)
    f_G = ball_G.counts()

    ball_H = enumerate_ball(h, oracle_H, R, deadline)
    images = set()
    gr_exact = []
    violations = []
    for r in range(R + 1):
        for w in ball_H.layers[r]:
            img = ball_G.locate(beta_image(w, rips.m))
            if img is None or len(img) > len(w):
                violations.append({"h": h.format_word(w),
                                   "beta": None if img is None else g.format_word(img)})
            images.add(img)
        gr_exact.append(len(images))

    n_gens = [(rips.t1,), (rips.t2,)]
    buffered = double_coset_growth_buffered(h, oracle_H, n_gens, n_gens, R, buffers, deadline)
    equal = gr_exact == f_G
    chain = all(b >= e for b, e in zip(buffered.counts, gr_exact)) and \
        all(all(x >= y for x, y in zip(buffered.meta["by_buffer"][a], buffered.meta["by_buffer"][b]))
            for a, b in zip(buffered.meta["buffers"], buffered.meta["buffers"][1:]))
    return {
        "rips": rips,
        "f_G": f_G,
        "gr_HNN": gr_exact,
        "buffered": buffered,
        "h_ball": ball_H.counts(),
        "beta_violations": violations,
        "beta_checked": len(ball_H),
        "equal": equal,
        "upper_bound_chain": chain,
        "passed": equal and chain and not violations,
    }


# -- double coset lower bound in free groups ----------------------------------


@dataclass
class Theorem2Config:
    rank: int
    genA: list
    genB: list
    c: tuple
    d: tuple
    N_exp: int
    x: tuple
    y: tuple
    R: int = 8
    band: tuple = (4, 6)
    q: QuasiParams | None = None
    beta_bound: Fraction = Fraction(0)

    @property
    def A(self):
        return fold_core(self.genA, self.rank)

    @property
    def B(self):
        return fold_core(self.genB, self.rank)

    def validate(self):
        A, B = self.A, self.B
        problems = []
        if is_finite_index(A):
            problems.append("A has finite index")
        if is_finite_index(B):
            problems.append("B has finite index")
        if not self.c or not intersection_pullback(fold_core([self.c], self.rank), A).is_trivial():
            problems.append("<c> meets A nontrivially")
        if not self.d or not intersection_pullback(fold_core([self.d], self.rank), B).is_trivial():
            problems.append("<d> meets B nontrivially")
        if self.N_exp < 0 or self.R < 0 or self.band[0] > self.band[1] or self.band[0] < 0:
            problems.append("radii, band and N_exp must be non-negative with band[0] <= band[1]")
        if problems:
            raise ConfigInvalid("; ".join(problems), problems=problems)
        return A, B


def theorem2_experiment(cfg):
    """Double-coset growth lower bound and distinctness of the cosets A s_i B
    for s_i = c^N z_i t_i w_i d^N, in the free group of rank ``cfg.rank``."""
    A, B = cfg.validate()
    series = double_coset_growth_free(cfg.rank, A, B, cfg.R)
    f = [free_growth(cfg.rank, r) for r in range(cfg.R + 1)]
    ratios = [Fraction(c, n) for c, n in zip(series.counts, f)]
    window = range(cfg.R + 1 - math.ceil(cfg.R / 2), cfg.R + 1)
    lam_hat = min(ratios[r] for r in window)

    four = (cfg.x, invert(cfg.x), cfg.y, invert(cfg.y))
    sep = SeparatorPair(cfg.x, cfg.y, min(len(cfg.x), len(cfg.y)), cfg.beta_bound,
                        product_table(four))
    q = cfg.q or sep.calibrated()
    cN, dN = power(cfg.c, cfg.N_exp), power(cfg.d, cfg.N_exp)

    words, classes = [], {}
    for n in range(cfg.band[0], cfg.band[1] + 1):
        for t in reduced_words(cfg.rank, n):
            try:
                z = select_connector(cN, t, sep, q)
                w = select_connector(cN + z + t, dN, sep, q)
            except NoneQualify as exc:
                raise SeparatorFailure(f"no connector for t={t}", t=list(t), **exc.detail) from exc
            s = free_reduce(cN + z + t + w + dN)
            rep = DoubleCosetGraph(A, B, s).shortlex_least()
            words.append((t, z, w, s))
            classes.setdefault(rep, []).append(t)
    m = len(words)
    distinct = len(classes)
    factor = Fraction(m, distinct) if distinct else None
    return {
        "series": series,
        "f": f,
        "ratios": ratios,
        "lambda_hat": lam_hat,
        "lambda_window": list(window),
        "growth_rate": fit_rate(series, 3) if cfg.R >= 2 else None,
        "m": m,
        "distinct": distinct,
        "collision_factor": factor,
        "q": q,
        "s_words": words,
        "passed": lam_hat > 0 and 16 * distinct >= m,
    }
