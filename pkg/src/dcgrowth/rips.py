"""The Rips construction over a finite presentation.

Given G = <x_1..x_m | r_1..r_n>, H has generators x_1..x_m, t_1, t_2 and relators

    r_i  t1 t2^a t1 t2^(a+1) ... t1 t2^b                 (i = 1..n)
    x_i^-1 t_j x_i  t1 t2^c ... t1 t2^d                   (i = 1..m, j = 1, 2)
    x_i t_j x_i^-1  t1 t2^e ... t1 t2^f                   (i = 1..m, j = 1, 2)

The exponent runs are consecutive, pairwise disjoint intervals.  N = <t1, t2>
is the kernel of the map H -> G that erases t-letters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExhausted
from .small_cancellation import check_metric_condition, max_piece, symmetrize
from .words import Presentation, free_reduce

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RipsData:
    source: Presentation
    result: Presentation
    constants: dict
    certificate: object
    run_length: int
    lam: Fraction

    @property
    def m(self):
        return self.source.rank

    @property
    def t1(self):
        return self.m + 1

    @property
    def t2(self):
        return self.m + 2

    def beta(self, w):
        return beta_image(w, self.m)

    def to_json(self):
        return {
            "G": str(self.source),
            "H": str(self.result),
            "lambda": f"{self.lam.numerator}/{self.lam.denominator}",
            "run_length": self.run_length,
            "constants": dict(self.constants),
            "certificate": self.certificate.to_json(self.result),
            "generator_map": {name: (name if i < self.m else "1")
                              for i, name in enumerate(self.result.generator_names)},
            "n_generators": [self.result.generator_names[self.t1 - 1],
                             self.result.generator_names[self.t2 - 1]],
        }


def _t_names(names):
    out = []
    for base in ("t1", "t2"):
        name = base
        while name in names or name in out:
            name = "_" + name
        out.append(name)
    return out


def _run(t1, t2, lo, hi):
    w = []
    for e in range(lo, hi + 1):
        w.append(t1)
        w.extend([t2] * e)
    return tuple(w)


def rips_presentation(g, run_length, start=1, gap=2):
    """Presentation of H for one choice of run length; returns (H, constants)."""
    m = g.rank
    t1, t2 = m + 1, m + 2
    names = g.generator_names + tuple(_t_names(g.generator_names))
    intervals = []
    lo = start

    def take():
        nonlocal lo
        iv = (lo, lo + run_length)
        lo = iv[1] + gap
        intervals.append(iv)
        return iv

    relators = []
    constants = {}
    for i, r in enumerate(g.relators):
        a, b = take()
        constants[f"a_{i + 1}"], constants[f"b_{i + 1}"] = a, b
        relators.append(tuple(r) + _run(t1, t2, a, b))
    for i in range(1, m + 1):
        for j, tj in enumerate((t1, t2), start=1):
            c, d = take()
            constants[f"c_{i}{j}"], constants[f"d_{i}{j}"] = c, d
            relators.append((-i, tj, i) + _run(t1, t2, c, d))
    for i in range(1, m + 1):
        for j, tj in enumerate((t1, t2), start=1):
            e, f = take()
            constants[f"e_{i}{j}"], constants[f"f_{i}{j}"] = e, f
            relators.append((i, tj, -i) + _run(t1, t2, e, f))
    return Presentation(names, tuple(relators)), constants


def build_rips(g, lam=Fraction(1, 6), initial_run_length=1, max_run_length=256):
    """Smallest run length (doubling from ``initial_run_length``) whose H satisfies C'(lam)."""
    lam = Fraction(lam)
    if lam > Fraction(1, 6) or lam <= 0:
        raise ValueError("lambda must lie in (0, 1/6]")
    if initial_run_length < 1:
        raise ValueError("initial_run_length must be >= 1")
    run = initial_run_length
    last = None
    while run <= max_run_length:
        h, constants = rips_presentation(g, run)
        sym = symmetrize(h)
        report = max_piece(sym)
        if check_metric_condition(sym, lam, report):
            log.info("certified C'(%s) at run length %d", lam, run)
            return RipsData(g, h, constants, report, run, lam)
        log.info("run length %d fails C'(%s): max piece %d", run, lam, report.max_piece_length)
        last = (h, report, run)
        run *= 2
    detail = {}
    if last is not None:
        h, report, run = last
        detail = {"run_length": run, "max_piece": report.max_piece_length}
        if report.witness is not None:
            piece = report.witness[0][:report.max_piece_length]
            detail["piece"] = h.format_word(piece)
    raise BudgetExhausted(f"no C'({lam}) certificate up to run length {max_run_length}", **detail)


def beta_image(w, m):
    """Erase t-letters (generators beyond the first m) and freely reduce."""
    return free_reduce(x for x in w if abs(x) <= m)


def n_generators(r):
    return {(r.t1,), (r.t2,)}
