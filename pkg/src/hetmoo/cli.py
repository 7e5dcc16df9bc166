"""Command line front end.

Three subcommands: ``run`` executes a plan file and writes the full report
tree, ``bench`` executes a single configured run and prints its final
metrics, ``front`` samples a problem's true trade-off curve.  The report
directory for ``run`` falls back to the HETMOO_OUT environment variable when
``--out`` is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import harness, problems, sched

OUT_ENV = "HETMOO_OUT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetmoo",
        description="Benchmarks for bi-objective optimization with one "
                    "slow and one fast objective.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a plan file")
    run.add_argument("plan", type=Path, help="experiment plan file")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--out", type=Path, default=None,
                     help=f"report directory (default: ${OUT_ENV})")

    bench = sub.add_parser("bench", help="execute a single run")
    bench.add_argument("problem", help="problem token, e.g. dtlz2(n=11)")
    bench.add_argument("--scheme", required=True, choices=sched.SCHEMES)
    bench.add_argument("--tau", type=int, default=5,
                       help="fast evaluations per slow evaluation")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", type=Path, default=None,
                       help="directory for the run and front CSVs")
    bench.add_argument("--fe-s-max", type=int, default=None,
                       help="slow evaluation budget")
    bench.add_argument("--n-train", type=int, default=None,
                       help="initial design size")
    bench.add_argument("--u", type=int, default=None,
                       help="slow evaluations per iteration")
    bench.add_argument("--w-max", type=int, default=None,
                       help="surrogate optimizer generations")
    bench.add_argument("--n-max", type=int, default=None,
                       help="training set cap")

    front = sub.add_parser("front", help="sample a true trade-off curve")
    front.add_argument("problem")
    front.add_argument("--count", type=int, default=500)
    front.add_argument("--out", type=Path, default=None,
                       help="output CSV (defaults to stdout)")
    return parser


def _cmd_run(args) -> int:
    try:
        plan = harness.parse_plan(args.plan.read_text())
    except FileNotFoundError:
        print(f"plan file not found: {args.plan}", file=sys.stderr)
        return 2
    out = args.out
    if out is None:
        env = os.environ.get(OUT_ENV)
        if not env:
            print(f"no report directory: pass --out or set ${OUT_ENV}",
                  file=sys.stderr)
            return 2
        out = Path(env)
    return harness.run_benchmark(plan, out, workers=args.workers)


def _cmd_bench(args) -> int:
    spec = harness.parse_problem_token(args.problem)
    problem = problems.HeterogeneousProblem(spec, args.tau)
    cfg = sched.AlgorithmConfig(tau=args.tau, seed=args.seed)
    overrides = {name: getattr(args, name) for name in
                 ("fe_s_max", "n_train", "u", "w_max", "n_max")
                 if getattr(args, name) is not None}
    cfg = replace(cfg, **overrides)
    cfg.validate()
    record = sched.run_scheme(args.scheme, problem, cfg)
    last = record.stats[-1]
    print(f"problem={record.problem} scheme={record.scheme} tau={record.tau} "
          f"seed={record.seed}")
    print(f"fe_s_used={record.fe_s_used} fe_f_used={record.fe_f_used} "
          f"iterations={last.iteration}")
    print(f"igd={harness.format_float(last.igd)} "
          f"hv={harness.format_float(last.hv)} "
          f"front_size={len(record.front_f)}")
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        cell = harness.Cell(args.problem, args.scheme, args.tau, 0, args.seed)
        harness.write_run_csv(record, args.out / harness.run_file_name(cell))
        front_path = args.out / ("front_" + harness.run_file_name(cell))
        harness.write_front_csv(record, front_path)
        print(f"wrote {args.out}")
    return 0


def _cmd_front(args) -> int:
    spec = harness.parse_problem_token(args.problem)
    front = problems.pareto_front_samples(spec, args.count)
    lines = ["f1,f2"]
    for f1, f2 in front:
        lines.append(f"{harness.format_float(f1)},{harness.format_float(f2)}")
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_front(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
