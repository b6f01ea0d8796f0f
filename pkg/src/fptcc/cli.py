"""Command line interface: ``fptcc {solve,exact,gen,check,bench}``.

Exit codes: 0 success, 2 parse/input error, 3 budget exceeded, 4 invariant
violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .complete import EXACT_CAP, SolverChoice, exact_cc
from .enumeration import EnumBudget
from .exceptions import (BudgetExceeded, ConfigError, InputError, InvariantViolation,
                         PreconditionError)
from .generate import InstanceSpec, gen_planted
from .graph import Clustering, DeltaParams, count_mistakes
from .io import (atomic_write, parse_clustering, read_instance, report_json,
                 write_clustering, write_instance)
from .pipeline import PipelineConfig, solve
from .validation import check_delta

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4

log = logging.getLogger("fptcc")


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        delta=DeltaParams(check_delta(args.delta)),
        solver=SolverChoice(args.complete_solver, args.repeats, args.seed),
        cut_solver=args.cut_solver,
        budget=EnumBudget(args.enum_max_subsets, args.enum_max_size),
        max_k=args.max_k,
        seed=args.seed,
    )


def _emit(text, out):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_solve(args):
    g = read_instance(args.input)
    report = solve(g, _config(args), exact_cap=args.exact_max_n)
    log.info("k=%d mistakes=%d selected=%s", report.k, report.mistakes.total, report.selected)
    text = report_json(report)
    if args.json_out:
        atomic_write(args.json_out, text)
    sys.stdout.write(text)
    if args.clustering_out:
        atomic_write(args.clustering_out, write_clustering(report.clustering))
    return EXIT_OK


def cmd_exact(args):
    g = read_instance(args.input)
    t0 = time.perf_counter()
    c = Clustering.from_clusters(exact_cc(g, cap=args.max_n), g.n)
    m = count_mistakes(g, c)
    out = {"n": g.n, "clusters": [list(x) for x in c.clusters], "mistakes": m.as_dict(),
           "runtime_ms": round((time.perf_counter() - t0) * 1000, 3)}
    _emit(json.dumps(out, indent=2) + "\n", args.json_out)
    return EXIT_OK


def cmd_gen(args):
    spec = InstanceSpec(args.n, args.bad_k, args.clusters, args.flip_prob, args.missing_frac,
                        args.seed)
    inst = gen_planted(spec)
    _emit(write_instance(inst.graph), args.out)
    if args.truth_out:
        atomic_write(args.truth_out, write_clustering(inst.ground_truth))
    return EXIT_OK


def cmd_check(args):
    g = read_instance(args.input)
    c = parse_clustering(Path(args.clustering).read_text(), g.n)
    sys.stdout.write(json.dumps(count_mistakes(g, c).as_dict()) + "\n")
    return EXIT_OK


def _bench_one(path, cfg, exact_max_n):
    g = read_instance(path)
    report = solve(g, cfg, exact_cap=exact_max_n)
    return {
        "instance": Path(path).name,
        "n": report.n,
        "k": report.k,
        "mistakes": report.mistakes.total,
        "exact_opt": report.exact_opt,
        "ratio": report.ratio,
        "truncated": report.truncated,
        "runtime_ms": report.runtime_ms,
    }


def cmd_bench(args):
    suite = Path(args.suite)
    paths = sorted(p for p in suite.glob(args.pattern) if p.is_file())
    if not paths:
        raise InputError(f"no instances matching {args.pattern!r} in {suite}")
    cfg = _config(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_one, paths, [cfg] * len(paths),
                                 [args.exact_max_n] * len(paths)))
    else:
        rows = [_bench_one(p, cfg, args.exact_max_n) for p in paths]
    ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
    summary = {
        "version": __version__,
        "config": cfg.echo(),
        "seed": cfg.seed,
        "instances": rows,
        "aggregate": {
            "count": len(rows),
            "with_ratio": len(ratios),
            "mean_ratio": statistics.fmean(ratios) if ratios else None,
            "max_ratio": max(ratios) if ratios else None,
            "below_exact": sum(1 for r in rows
                               if r["exact_opt"] is not None and r["mistakes"] < r["exact_opt"]),
        },
    }
    text = json.dumps(summary, indent=2) + "\n"
    _emit(text, args.json_out)
    if args.csv_out:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        atomic_write(args.csv_out, buf.getvalue())
    return EXIT_OK


def _solver_flags(p):
    p.add_argument("--delta", default="1/65", help="cleanliness parameter (default 1/65)")
    p.add_argument("--max-k", type=int, default=8, help="largest accepted cover of unknown pairs")
    p.add_argument("--complete-solver", choices=("pivot", "exact"), default="pivot")
    p.add_argument("--cut-solver", choices=("isolating", "exact"), default="isolating")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--enum-max-subsets", type=int, default=4096)
    p.add_argument("--enum-max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-max-n", type=int, default=None,
                   help="also compute the exact optimum when n is at most this")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fptcc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the approximation pipeline on an instance")
    p.add_argument("--input", required=True)
    _solver_flags(p)
    p.add_argument("--json-out")
    p.add_argument("--clustering-out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="optimal clustering by exhaustive search")
    p.add_argument("--input", required=True)
    p.add_argument("--max-n", type=int, default=EXACT_CAP)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("gen", help="generate a planted instance")
    p.add_argument("--n", type=int, required=True, help="number of good vertices")
    p.add_argument("--bad-k", type=int, default=0)
    p.add_argument("--clusters", type=int, default=2)
    p.add_argument("--flip-prob", type=float, default=0.0)
    p.add_argument("--missing-frac", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--truth-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="count the mistakes of a clustering file")
    p.add_argument("--input", required=True)
    p.add_argument("--clustering", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="solve + exact on every instance of a directory")
    p.add_argument("--suite", required=True)
    p.add_argument("--pattern", default="*.txt")
    _solver_flags(p)
    p.set_defaults(exact_max_n=EXACT_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json-out")
    p.add_argument("--csv-out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"fptcc: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, PreconditionError) as exc:
        print(f"fptcc: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, ConfigError, OSError) as exc:
        print(f"fptcc: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
