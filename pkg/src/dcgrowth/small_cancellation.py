"""Symmetrized relators, pieces, the metric condition C'(lambda), Dehn's algorithm,
and word-problem oracles.

Long relators (the Rips construction produces thousands of letters) are
handled as strings: letter ``x`` is the character ``chr(33 + letter_key(x))``,
so string order agrees with the ShortLex letter order and inversion is
``key ^ 1`` on each character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cayley import Ball, PartialCayleyGraph
from .errors import NotCertified, RadiusExceeded
from .words import free_reduce, invert, letter_key

_BASE = 33


def encode(w):
    return "".join(chr(_BASE + letter_key(x)) for x in w)


def decode(s):
    out = []
    for ch in s:
        k = ord(ch) - _BASE
        out.append(-(k // 2 + 1) if k & 1 else k // 2 + 1)
    return tuple(out)


def invert_encoded(s):
    return "".join(chr(((ord(ch) - _BASE) ^ 1) + _BASE) for ch in reversed(s))


def _common_prefix(s, t):
    lo, hi = 0, min(len(s), len(t))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if s[:mid] == t[:mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


class SymmetrizedSet:
    """All cyclic permutations of the relators and their inverses.

    Stored without materializing rotations: ``classes`` holds one encoded
    word per rotation class, ``sources`` the relator indices behind it; an element is a pair ``(class, offset)`` with ``offset`` below
    the primitive period of the class.
    """

    def __init__(self, presentation):
        self.presentation = presentation
        classes, sources = [], []
        for i, r in enumerate(presentation.relators):
            s = encode(r)
            for t in (s, invert_encoded(s)):
                for j, c in enumerate(classes):
                    if len(c) == len(t) and t in c + c:
                        sources[j].add(i)
                        break
                else:
                    classes.append(t)
                    sources.append({i})
        self.classes = classes
        self.doubled = [c + c for c in classes]
        self.sources = [tuple(sorted(x)) for x in sources]
        self.periods = [(c + c).find(c, 1) for c in classes]
        self._certified = {}
        self._halves = {}

    def descriptors(self):
        return [(j, off) for j, p in enumerate(self.periods) for off in range(p)]

    def rotation(self, j, off):
        return self.doubled[j][off:off + len(self.classes[j])]

    @property
    def strings(self):
        return sorted(self.rotation(j, off) for j, off in self.descriptors())

    @property
    def elements(self):
        return frozenset(decode(t) for t in self.strings)

    def __len__(self):
        return sum(self.periods)

    def __contains__(self, w):
        t = encode(w)
        return any(len(c) == len(t) and t in d for c, d in zip(self.classes, self.doubled))


def symmetrize(p):
    return SymmetrizedSet(p)


@dataclass(frozen=True)
class PieceReport:
    max_piece_length: int
    per_relator: dict = field(compare=False)
    witness: tuple | None = None

    def to_json(self, presentation):
        fmt = presentation.format_word
        return {
            "max_piece": self.max_piece_length,
            "per_relator": {fmt(presentation.relators[i]): n for i, n in sorted(self.per_relator.items())},
            "witness": None if self.witness is None else [fmt(w) for w in self.witness],
        }


def max_piece(s):
    """Longest common prefix of two distinct symmetrized elements.

    ``per_relator`` is keyed by relator index.  In sorted order the longest
    common prefix of an element with any other is attained at a neighbour, so
    only adjacent pairs are compared.  Sort keys are prefixes of length
    ``width``, doubled until no adjacent pair ties at the truncation.
    """
    desc = s.descriptors()
    longest = max((len(c) for c in s.classes), default=0)
    width = 64
    while True:
        keys = [s.doubled[j][off:off + min(width, len(s.classes[j]))] for j, off in desc]
        order = sorted(range(len(desc)), key=keys.__getitem__)
        lcps = [_common_prefix(keys[a], keys[b]) for a, b in zip(order, order[1:])]
        if width >= longest or all(n < width for n in lcps):
            break
        width *= 2
    best_for = [0] * len(desc)
    best, witness = 0, None
    for (a, b), n in zip(zip(order, order[1:]), lcps):
        best_for[a] = max(best_for[a], n)
        best_for[b] = max(best_for[b], n)
        if n > best:
            best, witness = n, (decode(s.rotation(*desc[a])), decode(s.rotation(*desc[b])))
    per_relator = {i: 0 for i in range(len(s.presentation.relators))}
    for (j, _), n in zip(desc, best_for):
        for i in s.sources[j]:
            per_relator[i] = max(per_relator[i], n)
    return PieceReport(best, per_relator, witness)


def check_metric_condition(s, lam, report=None):
    """True iff every piece in a relator r is strictly shorter than lam * |r|."""
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0, 1]")
    report = report or max_piece(s)
    rels = s.presentation.relators
    return all(n < lam * len(rels[i]) for i, n in report.per_relator.items())


def _certify(s):
    if "1/6" not in s._certified:
        s._certified["1/6"] = check_metric_condition(s, Fraction(1, 6))
    return s._certified["1/6"]


def _half_tables(s, longest):
    """Tables keyed by the (|r|//2 + 1)-prefix, built lazily for halves up to ``longest``."""
    out = []
    for j, c in enumerate(s.classes):
        h = len(c) // 2 + 1
        if h > longest:
            continue
        if h not in s._halves:
            s._halves[h] = {}
            for jj, cc in enumerate(s.classes):
                if len(cc) // 2 + 1 == h:
                    for off in range(s.periods[jj]):
                        s._halves[h].setdefault(s.doubled[jj][off:off + h], []).append((jj, off))
        out.append(h)
    return sorted((h, s._halves[h]) for h in set(out))


def _free_reduce_encoded(s):
    out = []
    for ch in s:
        if out and (ord(out[-1]) - _BASE) ^ 1 == ord(ch) - _BASE:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def dehn_reduce(w, s):
    """Dehn's algorithm: replace more-than-half relator subwords until none remain.

    At each step the leftmost qualifying subword is taken, then the longest;
    equal-length matches from different relators are resolved by the ShortLex
    order of the replacement.  Requires a C'(1/6) certificate.
    """
    if not _certify(s):
        raise NotCertified("presentation does not satisfy C'(1/6)")
    cur = _free_reduce_encoded(encode(w))
    tables = _half_tables(s, len(cur))
    while True:
        step = _dehn_step(cur, tables, s)
        if step is None:
            return decode(cur)
        i, k, repl = step
        nxt = _free_reduce_encoded(cur[:i] + repl + cur[i + k:])
        assert len(nxt) < len(cur)
        cur = nxt


def _dehn_step(cur, tables, s):
    n = len(cur)
    for i in range(n):
        best = None
        for h, table in tables:
            if i + h > n:
                break
            for j, off in table.get(cur[i:i + h], ()):
                rot = s.rotation(j, off)
                k = h
                while k < len(rot) and i + k < n and cur[i + k] == rot[k]:
                    k += 1
                repl = invert_encoded(rot[k:])
                cand = (-k, len(repl), repl)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return i, -best[0], best[2]
    return None


# -- oracles ---------------------------------------------------------------


class WordProblemOracle:
    method = None

    def __init__(self, presentation):
        self.presentation = presentation

    def is_trivial(self, w):
        raise NotImplementedError

    def equal(self, u, v):
        return self.is_trivial(free_reduce(tuple(u) + invert(v)))


class FreeOracle(WordProblemOracle):
    """Free groups: reduced words are normal forms."""

    method = "free"
    collision_length = float("inf")

    def __init__(self, presentation):
        if presentation.relators:
            raise ValueError("free oracle needs a presentation without relators")
        super().__init__(presentation)

    def is_trivial(self, w):
        return not free_reduce(w)

    def element_key(self, w):
        return free_reduce(w)

    def geodesic_length(self, w, r_max=None):
        n = len(free_reduce(w))
        if r_max is not None and n > r_max:
            raise RadiusExceeded(f"length {n} exceeds {r_max}")
        return n


class DehnOracle(WordProblemOracle):
    method = "dehn"

    def __init__(self, presentation, sym=None):
        super().__init__(presentation)
        self.sym = sym or symmetrize(presentation)
        if not _certify(self.sym):
            raise NotCertified("presentation does not satisfy C'(1/6)")
        # a nonempty reduced trivial word contains more than half of some relator
        self.collision_length = min((len(r) // 2 + 1 for r in presentation.relators),
                                    default=10 ** 18)
        self._ball = None

    def is_trivial(self, w):
        return not dehn_reduce(w, self.sym)

    def reduce(self, w):
        return dehn_reduce(w, self.sym)

    def geodesic_length(self, w, r_max):
        return _ball_search(self, w, r_max)


class BallOracle(WordProblemOracle):
    """Bounded coset enumeration on the radius-``radius`` free ball.

    Sound for any presentation; exact for words whose van Kampen diagrams fit
    inside the ball.  Words whose path leaves the ball raise RadiusExceeded.
    """

    method = "bfs_ball"

    def __init__(self, presentation, radius, max_vertices=3_000_000):
        super().__init__(presentation)
        self.radius = radius
        self.graph = PartialCayleyGraph(presentation, radius, max_vertices)
        self.collision_length = 1

    def element_key(self, w):
        return self.graph.trace(w)

    def is_trivial(self, w):
        return self.graph.trace(w) == 0

    def normal_form(self, w):
        return self.graph.label(self.graph.trace(w))

    def geodesic_length(self, w, r_max):
        n = len(self.normal_form(w))
        if n > r_max:
            raise RadiusExceeded(f"length {n} exceeds {r_max}")
        return n


def _ball_search(oracle, w, r_max):
    """Shortest equal word by ball search below the Dehn-reduced length.

    A word of length r can only equal the Dehn-reduced form u when
    r + |u| reaches the collision length, so shorter layers are skipped.
    """
    u = oracle.reduce(w)
    if oracle._ball is None:
        oracle._ball = Ball(oracle.presentation, oracle)
    ball = oracle._ball
    for r in range(max(0, oracle.collision_length - len(u)), min(len(u), r_max + 1)):
        if ball.radius < r:
            ball.grow(r)
        for e in ball.layers[r]:
            if oracle.equal(e, u):
                return r
    if len(u) > r_max:
        raise RadiusExceeded(f"no representative of length <= {r_max}")
    return len(u)


def make_oracle(presentation, radius=None):
    """Pick the strongest available oracle: free, Dehn (if C'(1/6)), else a ball of ``radius``."""
    if not presentation.relators:
        return FreeOracle(presentation)
    try:
        return DehnOracle(presentation)
    except NotCertified:
        if radius is None:
            raise
        return BallOracle(presentation, radius)


def is_trivial(w, o):
    return o.is_trivial(free_reduce(w))


def geodesic_length(w, o, r_max):
    """Length of a shortest word equal to ``w``; RadiusExceeded past ``r_max``."""
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    return o.geodesic_length(free_reduce(w), r_max)


def distance_function(o, r_max):
    """``dist(w)`` = group length of ``w``, for the geometry module (memoized)."""
    @lru_cache(maxsize=1 << 16)
    def dist(w):
        return geodesic_length(tuple(w), o, r_max)
    return dist
