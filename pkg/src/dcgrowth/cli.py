"""Command-line entry point: ``dcgrowth <subcommand> ...``.

Exit status: 0 when the command's check passes, 1 when it fails or a domain
error occurs (reported as JSON ``{"error", "detail"}`` on stderr), 2 on usage
errors such as a missing input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .errors import GroupComputationError
from .geometry import (QuasiParams, find_separators, free_length, large_products,
                       select_connector)
from .growth import (GrowthSeries, Theorem2Config, double_coset_growth_buffered,
                     double_coset_growth_free, fit_rate, growth_function, theorem1_check,
                     theorem2_experiment)
from .rips import build_rips
from .small_cancellation import (check_metric_condition, distance_function, make_oracle,
                                 max_piece, symmetrize)
from .stallings import fold_core, is_finite_index, membership
from .words import (PresentationSyntaxError, compact_word, format_presentation, parse_word,
                    read_presentation, read_subgroup)


class UsageError(Exception):
    pass


def ratio(x):
    return f"{float(x):.6f}"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def series_csv(series):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["r", "count", "exact"])
    for r, c, e in series.rows():
        writer.writerow([r, c, "true" if e else "false"])
    return buf.getvalue()


def read_series_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "count" not in rows[0]:
        raise UsageError(f"{path}: expected a CSV with header r,count[,exact]")
    rows.sort(key=lambda row: int(row["r"]))
    return GrowthSeries([int(row["count"]) for row in rows],
                        [row.get("exact", "true").lower() == "true" for row in rows])


def _require_file(path):
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return path


def _deadline(args):
    return None if args.budget_ms is None else time.monotonic() + args.budget_ms / 1000


def _letters(rank):
    return tuple("abcdefghijklmnopqrstuvwxyz"[:rank])


def _emit(args, report):
    """Write the JSON report if requested, else print it."""
    report = dict(report)
    report["version"] = __version__
    text = dump_json(report)
    if args.json:
        write_atomic(args.json, text)
    else:
        sys.stdout.write(text)


def _config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    cfg.update(extra)
    return cfg


# -- subcommands ----------------------------------------------------------------


def cmd_sc_check(args):
    p = read_presentation(_require_file(args.presentation))
    lam = Fraction(args.lam)
    sym = symmetrize(p)
    report = max_piece(sym)
    ok = check_metric_condition(sym, lam, report)
    out = report.to_json(p)
    out.update({"lambda": str(lam), "passes": ok, "config": _config(args)})
    _emit(args, out)
    return 0 if ok else 1


def cmd_rips_build(args):
    g = read_presentation(_require_file(args.infile))
    rips = build_rips(g, Fraction(args.lam), args.initial_run_length, args.max_run_length)
    write_atomic(args.out, format_presentation(rips.result) + "\n")
    report = rips.to_json()
    report["config"] = _config(args)
    report["version"] = __version__
    if args.report:
        write_atomic(args.report, dump_json(report))
    else:
        sys.stdout.write(dump_json(report))
    return 0


def cmd_stallings(args):
    names = _letters(args.rank)
    gens = read_subgroup(_require_file(args.subgroup), names)
    g = fold_core(gens, args.rank)
    out = {
        "rank": args.rank,
        "vertices": g.num_vertices,
        "edges": [[u, names[x - 1], v] for u, x, v in g.edges],
        "finite_index": is_finite_index(g),
        "basis": [compact_word(w, names) for w in g.generators()],
        "config": _config(args),
    }
    if args.member is not None:
        out["member"] = membership(g, parse_word(args.member, names))
    _emit(args, out)
    return 0


def _oracle_for(p, radius, ball_buffer):
    return make_oracle(p, radius=radius + ball_buffer)


def cmd_growth(args):
    p = read_presentation(_require_file(args.presentation))
    o = _oracle_for(p, args.radius, args.ball_buffer)
    series = growth_function(p, o, args.radius, _deadline(args))
    text = series_csv(series)
    if args.csv:
        write_atomic(args.csv, text)
    else:
        sys.stdout.write(text)
    if args.json:
        _emit(args, {"counts": series.counts, "oracle": o.method, "config": _config(args)})
    return 0


def cmd_dcoset_growth(args):
    p = read_presentation(_require_file(args.presentation))
    genA = read_subgroup(_require_file(args.A), p.generator_names)
    genB = read_subgroup(_require_file(args.B), p.generator_names)
    buffers = [int(b) for b in args.buffers.split(",")]
    if args.backend == "free" or (args.backend == "auto" and not p.relators):
        if p.relators:
            raise UsageError("the free backend needs a presentation without relators")
        series = double_coset_growth_free(p.rank, fold_core(genA, p.rank),
                                          fold_core(genB, p.rank), args.radius)
    else:
        o = _oracle_for(p, args.radius + max(buffers), args.ball_buffer)
        series = double_coset_growth_buffered(p, o, genA, genB, args.radius, buffers,
                                              _deadline(args))
    text = series_csv(series)
    if args.csv:
        write_atomic(args.csv, text)
    else:
        sys.stdout.write(text)
    if args.json:
        by_buffer = series.meta.get("by_buffer")
        _emit(args, {"counts": series.counts, "exact": series.exact,
                     "backend": series.meta["backend"],
                     "by_buffer": {str(k): v for k, v in (by_buffer or {}).items()},
                     "config": _config(args)})
    return 0


def cmd_thm1(args):
    g = read_presentation(_require_file(args.G))
    buffers = [int(b) for b in args.buffers.split(",")]
    oracle_G = _oracle_for(g, args.radius, args.ball_buffer)
    rep = theorem1_check(g, oracle_G, args.radius, buffers, Fraction(args.lam),
                         args.initial_run_length, _deadline(args))
    buffered = rep["buffered"]
    out = {
        "G": format_presentation(g),
        "H": format_presentation(rep["rips"].result),
        "run_length": rep["rips"].run_length,
        "certificate": {"max_piece": rep["rips"].certificate.max_piece_length,
                        "lambda": args.lam},
        "oracle_G": oracle_G.method,
        "rows": [{"r": r, "gr_HNN": rep["gr_HNN"][r], "f_G": rep["f_G"][r],
                  "buffered": buffered.counts[r], "buffered_stable": buffered.exact[r],
                  "H_ball": rep["h_ball"][r]}
                 for r in range(args.radius + 1)],
        "buffered_by_buffer": {str(k): v for k, v in buffered.meta["by_buffer"].items()},
        "beta_checked": rep["beta_checked"],
        "beta_violations": rep["beta_violations"],
        "equal": rep["equal"],
        "upper_bound_chain": rep["upper_bound_chain"],
        "passed": rep["passed"],
        "config": _config(args),
    }
    _emit(args, out)
    return 0 if rep["passed"] else 1


def load_theorem2_config(path):
    with open(path) as fh:
        raw = json.load(fh)
    try:
        rank = int(raw["rank"])
        names = _letters(rank)

        def word(s):
            return parse_word(s, names)

        q = None
        if "epsilon" in raw or "eta" in raw:
            q = QuasiParams(Fraction(str(raw.get("epsilon", 1))), Fraction(str(raw.get("eta", 0))))
        return Theorem2Config(
            rank=rank,
            genA=[word(s) for s in raw["A"]],
            genB=[word(s) for s in raw["B"]],
            c=word(raw["c"]),
            d=word(raw["d"]),
            N_exp=int(raw["N_exp"]),
            x=word(raw["x"]),
            y=word(raw["y"]),
            R=int(raw.get("R", 8)),
            band=tuple(raw.get("band", (4, 6))),
            q=q,
            beta_bound=Fraction(str(raw.get("beta", 0))),
        ), raw
    except KeyError as exc:
        raise UsageError(f"{path}: missing key {exc.args[0]!r}") from exc


def cmd_thm2(args):
    cfg, raw = load_theorem2_config(_require_file(args.config))
    rep = theorem2_experiment(cfg)
    names = _letters(cfg.rank)
    series = rep["series"]
    out = {
        "counts": series.counts,
        "f": rep["f"],
        "ratios": [ratio(x) for x in rep["ratios"]],
        "lambda_hat": ratio(rep["lambda_hat"]),
        "lambda_window": rep["lambda_window"],
        "growth_rate": None if rep["growth_rate"] is None else ratio(rep["growth_rate"]),
        "m": rep["m"],
        "distinct_double_cosets": rep["distinct"],
        "collision_factor": None if rep["collision_factor"] is None else ratio(rep["collision_factor"]),
        "collision_bound": 16,
        "q": {"epsilon": str(rep["q"].epsilon), "eta": str(rep["q"].eta)},
        "sample_s": [compact_word(s, names) for _, _, _, s in rep["s_words"][:10]],
        "passed": rep["passed"],
        "config": _config(args, resolved=raw),
    }
    if args.csv:
        write_atomic(args.csv, series_csv(series))
    _emit(args, out)
    return 0 if rep["passed"] else 1


def _random_reduced(rng, rank, max_len):
    n = rng.randint(0, max_len)
    w = []
    while len(w) < n:
        x = rng.choice([s * (i + 1) for i in range(rank) for s in (1, -1)])
        if w and w[-1] == -x:
            continue
        w.append(x)
    return tuple(w)


def cmd_claim3(args):
    p = read_presentation(_require_file(args.presentation))
    if p.relators:
        dist = distance_function(make_oracle(p, radius=args.dist_radius), args.dist_radius)
    else:
        dist = free_length
    names = p.generator_names
    sep = find_separators(p, dist, args.c0, Fraction(args.beta))
    q = sep.calibrated()
    rng = random.Random(args.seed)
    trials = []
    successes = 0
    for _ in range(args.trials):
        u = _random_reduced(rng, p.rank, args.max_len)
        v = _random_reduced(rng, p.rank, args.max_len)
        try:
            z = select_connector(u, v, sep, q, dist)
            successes += 1
            trials.append({"u": compact_word(u, names), "v": compact_word(v, names),
                           "connector": compact_word(z, names)})
        except GroupComputationError as exc:
            trials.append({"u": compact_word(u, names), "v": compact_word(v, names),
                           "connector": None, "error": exc.code})
    exclusive = 0
    for _ in range(args.exclusivity_trials):
        u = _random_reduced(rng, p.rank, args.max_len)
        if len(large_products(u, sep, dist)) <= 1:
            exclusive += 1
    out = {
        "separators": {"x": compact_word(sep.x, names), "y": compact_word(sep.y, names),
                       "C0": sep.C0, "beta": str(sep.beta_bound)},
        "products": {f"({compact_word(w, names)},{compact_word(z, names)})": str(val)
                     for (w, z), val in sorted(sep.product_table.items())},
        "q": {"epsilon": str(q.epsilon), "eta": str(q.eta)},
        "successes": successes,
        "trials": trials,
        "exclusivity": {"held": exclusive, "trials": args.exclusivity_trials},
        "passed": successes == args.trials and exclusive == args.exclusivity_trials,
        "config": _config(args),
    }
    _emit(args, out)
    return 0 if out["passed"] else 1


def cmd_fit_rate(args):
    series = read_series_csv(_require_file(args.series))
    rate = fit_rate(series, args.window)
    out = {"rate": ratio(rate), "window": args.window, "counts": series.counts,
           "config": _config(args)}
    _emit(args, out)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-ms", type=int, default=None)
    common.add_argument("--json", default=None, help="write the JSON report here")
    common.add_argument("--csv", default=None, help="write the CSV series here")

    parser = argparse.ArgumentParser(prog="dcgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("sc-check", cmd_sc_check, "piece report and C'(lambda) check")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--lambda", dest="lam", default="1/6")

    sp = add("rips-build", cmd_rips_build, "Rips construction with a C'(lambda) certificate")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--report", default=None)
    sp.add_argument("--lambda", dest="lam", default="1/6")
    sp.add_argument("--initial-run-length", type=int, default=1)
    sp.add_argument("--max-run-length", type=int, default=256)

    sp = add("stallings", cmd_stallings, "folded core graph and membership")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--member", default=None)

    sp = add("growth", cmd_growth, "growth function f(r)")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--ball-buffer", type=int, default=2,
                    help="extra radius for the bounded coset enumeration oracle")

    sp = add("dcoset-growth", cmd_dcoset_growth, "double coset growth gr(G, A, B)(r)")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--buffers", default="0,1,2,3")
    sp.add_argument("--backend", choices=("buffered", "free", "auto"), default="buffered")
    sp.add_argument("--ball-buffer", type=int, default=2)

    sp = add("thm1", cmd_thm1, "gr(H, N, N) = f_G for the Rips group over G")
    sp.add_argument("--G", required=True)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--buffers", default="0,1,2")
    sp.add_argument("--lambda", dest="lam", default="1/6")
    sp.add_argument("--initial-run-length", type=int, default=1)
    sp.add_argument("--ball-buffer", type=int, default=2)

    sp = add("thm2", cmd_thm2, "double coset lower bound in a free group")
    sp.add_argument("--config", required=True)

    sp = add("claim3", cmd_claim3, "separator words and connector selection")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--c0", type=int, default=3)
    sp.add_argument("--beta", default="0")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--exclusivity-trials", type=int, default=1000)
    sp.add_argument("--max-len", type=int, default=12)
    sp.add_argument("--dist-radius", type=int, default=12)

    sp = add("fit-rate", cmd_fit_rate, "geometric-mean growth rate of a CSV series")
    sp.add_argument("--series", required=True)
    sp.add_argument("--window", type=int, default=3)
    return parser


def _check_config(args):
    for name in ("radius", "budget_ms", "trials", "window", "c0", "max_len", "rank"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_config(args)
        return args.func(args)
    except (UsageError, PresentationSyntaxError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(dump_json({"error": "usage", "detail": str(exc)}))
        return 2
    except GroupComputationError as exc:
        sys.stderr.write(dump_json({"error": exc.code, "detail": {"message": str(exc), **exc.detail}}))
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
