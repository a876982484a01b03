"""Gromov products, quasigeodesic words, and separator/connector selection.

Distances come from an injected ``dist(word) -> int`` giving the group length
of a word, so the same code serves free groups (``free_length``) and groups
with a word-problem oracle (``small_cancellation.distance_function``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import NoneQualify, NotFound
from .words import free_reduce, invert, reduced_words


def free_length(w):
    return len(free_reduce(w))


@dataclass(frozen=True)
class QuasiParams:
    epsilon: Fraction = Fraction(1)
    eta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "eta", Fraction(self.eta))
        if self.epsilon < 1 or self.eta < 0:
            raise ValueError("need epsilon >= 1 and eta >= 0")

    def weaker_or_equal(self, other):
        return self.epsilon >= other.epsilon and self.eta >= other.eta


def gromov_product(u, v, dist=free_length):
    """(u, v)_1 = (|u| + |v| - |u^-1 v|) / 2."""
    return Fraction(dist(u) + dist(v) - dist(tuple(invert(u)) + tuple(v)), 2)


def is_quasigeodesic(w, q, dist=free_length):
    """Every subword w[i:j] satisfies j - i <= epsilon * |w[i:j]| + eta."""
    w = tuple(w)
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            if j - i > q.epsilon * dist(w[i:j]) + q.eta:
                return False
    return True


def is_quasigeodesic_free(w, q):
    """Free-group fast path of ``is_quasigeodesic``: O(n^2) with a running reduction stack."""
    w = tuple(w)
    for i in range(len(w)):
        stack = []
        for j in range(i, len(w)):
            x = w[j]
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
            if j + 1 - i > q.epsilon * len(stack) + q.eta:
                return False
    return True


def _quasi_check(dist):
    return is_quasigeodesic_free if dist is free_length else \
        (lambda w, q: is_quasigeodesic(w, q, dist))


@dataclass(frozen=True)
class SeparatorPair:
    x: tuple
    y: tuple
    C0: int
    beta_bound: Fraction
    product_table: dict

    @property
    def candidates(self):
        return (self.x, invert(self.x), self.y, invert(self.y))

    def calibrated(self):
        """(1, 4 * max(|x|, |y|)): junction cancellation is bounded by the separator length."""
        return QuasiParams(1, 4 * max(len(self.x), len(self.y)))


def product_table(words, dist=free_length):
    return {(w, z): gromov_product(w, z, dist) for w, z in permutations(words, 2)}


def _primitive_root_length(w):
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return p
    return n


def find_separators(p, dist, C0, beta_bound, slack=2, geodesics=None):
    """First pair (x, y) of geodesic words, |x|, |y| in [C0, C0 + slack], whose
    four words x, x^-1, y, y^-1 are distinct and pairwise have Gromov product
    at most ``beta_bound``.

    Candidates are ordered by length, then by the length of the primitive root
    (powers of short words first), then ShortLex.  ``geodesics(length)`` may
    supply the geodesic words of a given length; by default reduced words are
    filtered through ``dist``.
    """
    beta_bound = Fraction(beta_bound)
    if geodesics is None:
        def geodesics(n):
            return [w for w in reduced_words(p.rank, n) if dist(w) == n]
    pool = []
    for n in range(max(C0, 1), max(C0, 1) + slack + 1):
        words = geodesics(n)
        pool.extend(sorted(words, key=lambda w: (_primitive_root_length(w),)))
    for i, x in enumerate(pool):
        for y in pool[i + 1:]:
            four = (x, invert(x), y, invert(y))
            if len(set(four)) < 4:
                continue
            table = product_table(four, dist)
            if all(v <= beta_bound for v in table.values()):
                return SeparatorPair(x, y, C0, beta_bound, table)
    raise NotFound(f"no separator pair with C0={C0}, beta={beta_bound}")


def select_connector(u, v, sep, q, dist=free_length):
    """First z in (x, x^-1, y, y^-1) with u z v an (epsilon, eta)-quasigeodesic."""
    check = _quasi_check(dist)
    failures = []
    for z in sep.candidates:
        w = tuple(u) + tuple(z) + tuple(v)
        if check(w, q):
            return z
        failures.append(_failure_certificate(w, q, dist))
    raise NoneQualify("no connector yields a quasigeodesic", certificates=failures)


def _failure_certificate(w, q, dist):
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            d = dist(w[i:j])
            if j - i > q.epsilon * d + q.eta:
                return {"word": list(w), "subword": [i, j], "length": j - i, "distance": d}
    return None


def large_products(u, sep, dist=free_length):
    """Which of (u, z)_1 for z in (x, x^-1, y, y^-1) exceed the separator bound."""
    return [z for z in sep.candidates if gromov_product(u, z, dist) > sep.beta_bound]
