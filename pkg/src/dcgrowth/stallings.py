"""Stallings graphs of finitely generated subgroups of free groups.

A ``CoreGraph`` is folded and basepointed, with vertices numbered by BFS from
the basepoint in ShortLex letter order.  Since a folded graph is
deterministic, that numbering is canonical and equality of ``CoreGraph``
values is isomorphism of based labeled graphs.

Double cosets A h B are handled by an automaton over Gamma_A, a one-way path
spelling h, and Gamma_B, saturated by empty moves for cancelling pairs
(Benois); its accepted reduced words are exactly the elements of A h B.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .words import alphabet, free_reduce, invert, shortlex_key


class _Folder:
    """Labeled graph under construction; identifications are folded eagerly."""

    def __init__(self, rng=None):
        self.rep = []
        self.out = []
        self.inc = []
        self.rng = rng

    def vertex(self):
        self.rep.append(len(self.rep))
        self.out.append({})
        self.inc.append({})
        return len(self.rep) - 1

    def find(self, v):
        rep = self.rep
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    def edge(self, u, x, v):
        """Add an edge reading letter ``x`` from u to v."""
        if x < 0:
            u, v, x = v, u, -x
        queue = []
        u, v = self.find(u), self.find(v)
        w = self.out[u].get(x)
        if w is None:
            self.out[u][x] = v
        elif self.find(w) != v:
            queue.append((w, v))
        w = self.inc[v].get(x)
        if w is None:
            self.inc[v][x] = u
        elif self.find(w) != u:
            queue.append((w, u))
        self._fold(queue)

    def path(self, u, word, v):
        if not word:
            self._fold([(u, v)])
            return
        cur = u
        for x in word[:-1]:
            nxt = self.vertex()
            self.edge(cur, x, nxt)
            cur = nxt
        self.edge(cur, word[-1], v)

    def _fold(self, queue):
        while queue:
            if self.rng is not None:
                i = self.rng.randrange(len(queue))
                queue[i], queue[-1] = queue[-1], queue[i]
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.rep[b] = a
            for table in (self.out, self.inc):
                ta, tb = table[a], table[b]
                for x, y in tb.items():
                    z = ta.get(x)
                    if z is None:
                        ta[x] = y
                    else:
                        queue.append((z, y))
                tb.clear()

    def step(self, v, x):
        w = self.out[v].get(x) if x > 0 else self.inc[v].get(-x)
        return None if w is None else self.find(w)

    def edges(self):
        seen = set()
        for v in range(len(self.rep)):
            if self.rep[v] != v:
                continue
            for x, w in self.out[v].items():
                seen.add((v, x, self.find(w)))
        return seen


def _canonical(rank, base, edges, keep=None):
    """Renumber by BFS from ``base``; drop vertices not reachable or not in ``keep``."""
    out, inc = {}, {}
    for u, x, v in edges:
        if keep is not None and (u not in keep or v not in keep):
            continue
        out.setdefault(u, {})[x] = v
        inc.setdefault(v, {})[x] = u
    number = {base: 0}
    queue = deque([base])
    letters = alphabet(rank)
    while queue:
        v = queue.popleft()
        for x in letters:
            w = out.get(v, {}).get(x) if x > 0 else inc.get(v, {}).get(-x)
            if w is not None and w not in number:
                number[w] = len(number)
                queue.append(w)
    new_edges = sorted((number[u], x, number[v]) for u, d in out.items() for x, v in d.items()
                       if u in number)
    return CoreGraph(rank, len(number), tuple(new_edges))


def _core_vertices(base, edges):
    """Vertices left after repeatedly pruning degree-1 vertices other than ``base``."""
    degree, nbrs = {base: 0}, {base: []}
    for u, _, v in edges:
        for a, b in ((u, v), (v, u)):
            degree[a] = degree.get(a, 0) + 1
            nbrs.setdefault(a, []).append(b)
    alive = set(degree)
    stack = [v for v, d in degree.items() if d <= 1 and v != base]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in nbrs[v]:
            if w in alive:
                degree[w] -= 1
                if degree[w] <= 1 and w != base:
                    stack.append(w)
    return alive


@dataclass(frozen=True)
class CoreGraph:
    rank: int
    num_vertices: int
    edges: tuple
    basepoint: int = 0

    @cached_property
    def out(self):
        out = [{} for _ in range(self.num_vertices)]
        for u, x, v in self.edges:
            out[u][x] = v
        return out

    @cached_property
    def inc(self):
        inc = [{} for _ in range(self.num_vertices)]
        for u, x, v in self.edges:
            inc[v][x] = u
        return inc

    def step(self, v, x):
        return self.out[v].get(x) if x > 0 else self.inc[v].get(-x)

    def read(self, w, start=0):
        cur = start
        for x in w:
            cur = self.step(cur, x)
            if cur is None:
                return None
        return cur

    def is_folded(self):
        seen_out, seen_in = set(), set()
        for u, x, v in self.edges:
            if (u, x) in seen_out or (v, x) in seen_in:
                return False
            seen_out.add((u, x))
            seen_in.add((v, x))
        return True

    def is_core(self):
        deg = [0] * self.num_vertices
        for u, _, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return all(d >= 2 for v, d in enumerate(deg) if v != self.basepoint)

    def is_trivial(self):
        return not self.edges

    def generators(self):
        """Free basis read off a spanning tree: one generator per non-tree edge."""
        tree_word = {0: ()}
        queue = deque([0])
        tree = set()
        letters = alphabet(self.rank)
        while queue:
            v = queue.popleft()
            for x in letters:
                w = self.step(v, x)
                if w is not None and w not in tree_word:
                    tree_word[w] = tree_word[v] + (x,)
                    tree.add((v, x, w) if x > 0 else (w, -x, v))
                    queue.append(w)
        return [free_reduce(tree_word[u] + (x,) + invert(tree_word[v]))
                for u, x, v in self.edges if (u, x, v) not in tree]


def fold_core(generators, rank, rng=None):
    """Folded core graph of <generators> in the free group of the given rank."""
    f = _Folder(rng)
    base = f.vertex()
    gens = [free_reduce(g) for g in generators]
    if rng is not None:
        gens = gens[:]
        rng.shuffle(gens)
    for g in gens:
        if any(abs(x) > rank for x in g):
            raise ValueError(f"generator {g} uses letters outside rank {rank}")
        if g:
            f.path(base, g, base)
    edges = f.edges()
    base = f.find(base)
    return _canonical(rank, base, edges, _core_vertices(base, edges))


def membership(g, w):
    return g.read(free_reduce(w)) == g.basepoint


def is_finite_index(g):
    """Complete graph: every vertex has an incoming and an outgoing edge of each label."""
    if g.rank == 0:
        return True
    labels = set(range(1, g.rank + 1))
    return all(set(g.out[v]) == labels and set(g.inc[v]) == labels
               for v in range(g.num_vertices))


def intersection_pullback(g1, g2):
    """Core of the basepoint component of the fiber product: A ∩ B."""
    if g1.rank != g2.rank:
        raise ValueError("rank mismatch")
    base = (g1.basepoint, g2.basepoint)
    seen = {base}
    queue = deque([base])
    edges = set()
    while queue:
        p, q = queue.popleft()
        for x in alphabet(g1.rank):
            p2, q2 = g1.step(p, x), g2.step(q, x)
            if p2 is None or q2 is None:
                continue
            edges.add(((p, q), x, (p2, q2)) if x > 0 else ((p2, q2), -x, (p, q)))
            if (p2, q2) not in seen:
                seen.add((p2, q2))
                queue.append((p2, q2))
    return _canonical(g1.rank, base, edges, _core_vertices(base, edges))


# -- double cosets ----------------------------------------------------------


class DoubleCosetGraph:
    """Automaton whose accepted reduced words are exactly the elements of A h B.

    States are the vertices of Gamma_A, the inner vertices of a path spelling
    h, and the vertices of Gamma_B.  Core-graph edges are readable both ways,
    the h-path only forwards, so the accepted strings are A-words, then h,
    then B-words.  Saturating with empty moves for every x x^-1 detour makes
    the accepted *reduced* words the reduced forms of those strings.
    """

    def __init__(self, A, B, h):
        if A.rank != B.rank:
            raise ValueError("rank mismatch")
        self.rank = A.rank
        h = free_reduce(h)
        na, nb = A.num_vertices, B.num_vertices
        n = na + max(len(h) - 1, 0) + nb
        moves = [[] for _ in range(n)]
        for u, x, v in A.edges:
            moves[u].append((x, v))
            moves[v].append((-x, u))
        for u, x, v in B.edges:
            moves[n - nb + u].append((x, n - nb + v))
            moves[n - nb + v].append((-x, n - nb + u))
        self.start = A.basepoint
        self.end = n - nb + B.basepoint
        path = [self.start] + list(range(na, na + len(h) - 1)) + [self.end]
        empty = [{q} for q in range(n)]
        if h:
            for i, x in enumerate(h):
                moves[path[i]].append((x, path[i + 1]))
        else:
            empty[self.start].add(self.end)
        self.moves = moves
        self.closure = self._saturate(empty)

    def _saturate(self, empty):
        n = len(self.moves)
        closure = self._close(empty)
        changed = True
        while changed:
            changed = False
            for p in range(n):
                for x, r in self.moves[p]:
                    for r2 in closure[r]:
                        for y, q in self.moves[r2]:
                            if y == -x and q not in closure[p]:
                                empty[p].add(q)
                                changed = True
                if changed:
                    closure = self._close(empty)
        return closure

    @staticmethod
    def _close(empty):
        out = []
        for p in range(len(empty)):
            seen, stack = {p}, [p]
            while stack:
                for q in empty[stack.pop()]:
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            out.append(frozenset(seen))
        return out

    def _step(self, states, x):
        out = set()
        for p in states:
            for q in self.closure[p]:
                for y, r in self.moves[q]:
                    if y == x:
                        out.add(r)
        return out

    def accepts(self, w):
        states = {self.start}
        for x in free_reduce(w):
            states = self._step(states, x)
            if not states:
                return False
        return any(self.end in self.closure[p] for p in states)

    def shortlex_least(self):
        letters = alphabet(self.rank)
        nodes = {(q, 0) for q in range(len(self.moves))}
        succ = {}
        for q in range(len(self.moves)):
            for last in [0] + letters:
                for x in letters:
                    if x == -last:
                        continue
                    for r in self._step({q}, x):
                        succ.setdefault((q, last), []).append((x, (r, x)))
                        nodes.add((r, x))
        pred = {}
        for node, outs in succ.items():
            for x, nxt in outs:
                pred.setdefault(nxt, []).append(node)
        dist = {}
        queue = deque()
        for node in nodes | set(succ):
            if self.end in self.closure[node[0]]:
                dist[node] = 0
                queue.append(node)
        while queue:
            v = queue.popleft()
            for u in pred.get(v, ()):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        frontier = {(self.start, 0)}
        word = []
        d = dist[(self.start, 0)]
        while d > 0:
            for x in letters:
                nxt = {n for node in frontier for y, n in succ.get(node, ()) if y == x
                       and dist.get(n) == d - 1}
                if nxt:
                    word.append(x)
                    frontier = nxt
                    d -= 1
                    break
        return tuple(word)


def double_coset_equal_free(A, B, h1, h2):
    """True iff h2 = a h1 b for some a in A, b in B."""
    return DoubleCosetGraph(A, B, h1).accepts(h2)


def double_coset_canonical_free(A, B, h):
    """ShortLex-least element of A h B."""
    return DoubleCosetGraph(A, B, h).shortlex_least()


# -- brute-force reference ------------------------------------------------------


def subgroup_elements(generators, depth):
    """Reduced forms of all products of at most ``depth`` generators or inverses."""
    letters = {free_reduce(g) for g in generators} | {invert(free_reduce(g)) for g in generators}
    letters.discard(())
    seen = {()}
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for g in letters:
                v = free_reduce(w + g)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def brute_force_double_coset(genA, genB, h, depth, radius):
    """Elements of A h B of length <= radius reachable with <= depth generators per side."""
    As = subgroup_elements(genA, depth)
    Bs = subgroup_elements(genB, depth)
    h = free_reduce(h)
    out = set()
    for a, b in product(As, Bs):
        w = free_reduce(a + h + b)
        if len(w) <= radius:
            out.add(w)
    return out


def brute_force_equal(genA, genB, h1, h2, depth=4):
    h2 = free_reduce(h2)
    return h2 in brute_force_double_coset(genA, genB, h1, depth, len(h2))


def brute_force_canonical(genA, genB, h, depth=4):
    return min(brute_force_double_coset(genA, genB, h, depth, len(free_reduce(h))), key=shortlex_key)


def brute_force_membership(generators, w, depth=4):
    return free_reduce(w) in subgroup_elements(generators, depth)

