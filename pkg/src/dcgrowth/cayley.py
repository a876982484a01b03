"""Balls in Cayley graphs.

``PartialCayleyGraph`` is a bounded coset enumeration over the trivial
subgroup: it starts from the free tree of reduced words of length at most
``depth``, never defines vertices outside it, and identifies vertices only
when a relator loop forces it.  Every identification it makes is a true
equation in the group, so the answers are sound; they are complete once the
depth leaves enough room for the van Kampen diagrams involved.

``Ball`` is the layered BFS over ShortLex-least representatives, driven by any
word-problem oracle.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import lcm

from .errors import BudgetExhausted, RadiusExceeded
from .words import alphabet, free_reduce, invert, letter_key, rotations


class PartialCayleyGraph:
    def __init__(self, presentation, depth, max_vertices=3_000_000):
        self.presentation = presentation
        self.depth = depth
        k = presentation.rank
        self.rank = k
        letters = alphabet(k)
        if 1 + sum(2 * k * (2 * k - 1) ** (i - 1) for i in range(1, depth + 1)) > max_vertices:
            raise BudgetExhausted(f"free ball of radius {depth} exceeds {max_vertices} vertices",
                                  depth=depth, max_vertices=max_vertices)

        # free tree in ShortLex order: vertex ids increase with the ShortLex order of labels
        parent = [-1]
        via = [0]
        level = [0]
        table = [[-1] * (2 * k)]
        start, stop = 0, 1
        for d in range(depth):
            for v in range(start, stop):
                last = via[v]
                for x in letters:
                    if x == -last:
                        continue
                    c = len(parent)
                    parent.append(v)
                    via.append(x)
                    level.append(d + 1)
                    row = [-1] * (2 * k)
                    row[letter_key(x) ^ 1] = v
                    table.append(row)
                    table[v][letter_key(x)] = c
            start, stop = stop, len(parent)
        self.parent, self.via, self.level, self.table = parent, via, level, table
        self.rep = list(range(len(parent)))

        loops = set()
        for r in presentation.relators:
            for w in (r, invert(r)):
                loops.update(rotations(w))
        self.loops = sorted(tuple(letter_key(x) for x in w) for w in loops)
        self.coincidences = 0
        self._enumerate()

    # -- union-find with lazy edge resolution --------------------------------

    def find(self, v):
        rep = self.rep
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    def _coincide(self, a, b):
        queue = [(a, b)]
        table, find = self.table, self.find
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            # keep the ShortLex-smaller vertex as representative
            self.rep[b] = a
            self.coincidences += 1
            row_a, row_b = table[a], table[b]
            for s in range(len(row_b)):
                y = row_b[s]
                if y < 0:
                    continue
                z = row_a[s]
                if z < 0:
                    row_a[s] = y
                else:
                    queue.append((z, y))

    def _deduce(self, u, s, v):
        table, find = self.table, self.find
        cur = table[u][s]
        if cur >= 0:
            if find(cur) != v:
                self._coincide(cur, v)
            return
        table[u][s] = v
        back = table[v][s ^ 1]
        if back < 0:
            table[v][s ^ 1] = u
        elif find(back) != u:
            self._coincide(back, u)

    def _enumerate(self):
        table, find, rep = self.table, self.find, self.rep
        changed = True
        while changed:
            changed = False
            before = self.coincidences
            for v in range(len(table)):
                if rep[v] != v:
                    continue
                for loop in self.loops:
                    cur = v
                    n = len(loop)
                    i = 0
                    while i < n:
                        nxt = table[cur][loop[i]]
                        if nxt < 0:
                            break
                        cur = find(nxt)
                        i += 1
                    v = find(v)
                    if i == n:
                        if cur != v:
                            self._coincide(cur, v)
                    elif i == n - 1:
                        if table[cur][loop[-1]] < 0:
                            self._deduce(cur, loop[-1], v)
                            changed = True
            if self.coincidences != before:
                changed = True

    # -- queries ---------------------------------------------------------------

    def trace(self, w):
        """Vertex reached by reading ``w`` from the identity."""
        cur = 0
        table, find = self.table, self.find
        for x in w:
            nxt = table[cur][letter_key(x)]
            if nxt < 0:
                raise RadiusExceeded(f"word leaves the radius-{self.depth} ball", depth=self.depth)
            cur = find(nxt)
        return cur

    def label(self, v):
        """ShortLex-least word reaching vertex ``v``."""
        v = self.find(v)
        out = []
        while v:
            out.append(self.via[v])
            v = self.parent[v]
        return tuple(reversed(out))

    def num_elements(self):
        return sum(1 for v, r in enumerate(self.rep) if v == r)


def abelian_functionals(presentation):
    """Integer functionals on exponent-sum vectors that vanish on every relator.

    Equal group elements have equal values, so these make a cheap necessary
    test for equality.
    """
    k = presentation.rank
    rows = []
    for r in presentation.relators:
        v = [0] * k
        for x in r:
            v[abs(x) - 1] += 1 if x > 0 else -1
        rows.append([Fraction(c) for c in v])
    pivots, reduced = [], []
    for row in rows:
        row = row[:]
        for (col, prow) in zip(pivots, reduced):
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((i for i, c in enumerate(row) if c), None)
        if lead is None:
            continue
        row = [c / row[lead] for c in row]
        for i, prow in enumerate(reduced):
            if prow[lead]:
                f = prow[lead]
                reduced[i] = [a - f * b for a, b in zip(prow, row)]
        pivots.append(lead)
        reduced.append(row)
    out = []
    for free in (i for i in range(k) if i not in pivots):
        vec = [Fraction(0)] * k
        vec[free] = Fraction(1)
        for col, prow in zip(pivots, reduced):
            vec[col] = -prow[free]
        scale = lcm(*(c.denominator for c in vec))
        out.append(tuple(int(c * scale) for c in vec))
    return out


class Ball:
    """Canonical (ShortLex-least) representatives of group elements of length <= radius.

    ``oracle`` needs ``is_trivial``; if it also offers ``element_key`` the
    dedup is a dict lookup, otherwise candidates are compared pairwise within
    buckets of equal abelianized image, pruned by ``oracle.collision_length``
    (the shortest nonempty reduced word that can be trivial).
    """

    def __init__(self, presentation, oracle, deadline=None):
        self.presentation = presentation
        self.oracle = oracle
        self.deadline = deadline
        self.layers = [[()]]
        self.keyed = getattr(oracle, "element_key", None) is not None
        self.index = {self._key(()): ()} if self.keyed else {(): ()}
        self.functionals = abelian_functionals(presentation)
        self.buckets = {(self._abelian(()), 0): [()]}

    @property
    def radius(self):
        return len(self.layers) - 1

    @property
    def elements(self):
        return [w for layer in self.layers for w in layer]

    def layer_index(self):
        return {r: (sum(map(len, self.layers[:r])), sum(map(len, self.layers[:r + 1])))
                for r in range(len(self.layers))}

    def counts(self):
        out, total = [], 0
        for layer in self.layers:
            total += len(layer)
            out.append(total)
        return out

    def __len__(self):
        return sum(map(len, self.layers))

    def __contains__(self, w):
        return self.locate(w) is not None

    def _key(self, w):
        return self.oracle.element_key(w)

    def _abelian(self, w):
        v = [0] * self.presentation.rank
        for x in w:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sum(f * c for f, c in zip(fn, v)) for fn in self.functionals)

    def locate(self, w):
        """Canonical representative of ``w`` if its element lies in the ball, else None."""
        w = free_reduce(w)
        if self.keyed:
            try:
                return self.index.get(self._key(w))
            except RadiusExceeded:
                return None
        if w in self.index:
            return w
        return self._locate_pairwise(w)

    def grow(self, radius):
        letters = alphabet(self.presentation.rank)
        while self.radius < radius:
            new = []
            for v in self.layers[-1]:
                if self.deadline is not None and time.monotonic() > self.deadline:
                    raise BudgetExhausted("time budget exhausted during ball enumeration",
                                          radius=self.radius)
                for x in letters:
                    if v and v[-1] == -x:
                        continue
                    w = v + (x,)
                    if self.keyed:
                        key = self._key(w)
                        if key in self.index:
                            continue
                        self.index[key] = w
                        new.append(w)
                    else:
                        if self._locate_pairwise(w) is None:
                            self.index[w] = w
                            self.buckets.setdefault((self._abelian(w), len(w)), []).append(w)
                            new.append(w)
            self.layers.append(new)
        return self

    def _locate_pairwise(self, w):
        key = self._abelian(w)
        top = max(self.radius, len(w))
        for n in range(max(0, self.oracle.collision_length - len(w)), top + 1):
            for e in self.buckets.get((key, n), ()):
                if self.oracle.is_trivial(free_reduce(e + invert(w))):
                    return e
        return None


def enumerate_ball(presentation, oracle, r, deadline=None):
    """Layered BFS ball of radius ``r``; each element is its ShortLex-least word."""
    return Ball(presentation, oracle, deadline).grow(r)
