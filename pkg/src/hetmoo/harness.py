"""Benchmark harness: plan files, parallel execution, CSV and SVG reporting.

A plan is a plain-text file of ``key = value`` lines. ``#`` starts a comment
and blank lines are skipped. A ``[scheme:NAME]`` header opens a section whose
keys override the shared algorithm settings for that scheme only. Unknown or
repeated keys are rejected with the offending line number.

Shared keys::

    problems    comma-separated problem tokens, e.g. dtlz2(n=11), uf4
    schemes     comma-separated scheme names (see sched.SCHEMES)
    tau         comma-separated slowdown factors (default 5)
    replicates  runs per cell (default 1)
    base_seed   replicate i uses seed base_seed + i (default 0)

plus any of the algorithm keys, which are also legal inside scheme sections:
fe_s_max, u, w_max, n_train, n_max, front_samples, baseline_pop,
fast_first_reserve, accumulate_transfer, co_mse_diagnostic.

All floats in emitted CSVs are written with ``repr`` so that equal runs
produce byte-identical files.
"""

from __future__ import annotations

import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import metrics, problems, sched
from .errors import PlanError

_ALGO_KEYS = {
    "fe_s_max": int, "u": int, "w_max": int, "n_train": int, "n_max": int,
    "front_samples": int, "baseline_pop": int, "fast_first_reserve": int,
    "accumulate_transfer": bool, "co_mse_diagnostic": bool,
}
_GLOBAL_KEYS = {"problems", "schemes", "tau", "replicates", "base_seed"}

RUN_HEADER = "iteration,fe_s_used,igd,hv,dt_size,co_mse"
SUMMARY_HEADER = ("problem,scheme,tau,replicates,igd_mean,igd_std,igd_median,"
                  "hv_mean,hv_std,marker")
CONVERGENCE_HEADER = "scheme,replicate,fe_s_used,igd"

_SVG_COLORS = ("#1b6ca8", "#c23b22", "#2e8540", "#8031a7",
               "#b8860b", "#00778b", "#d04a8d", "#555555")


def format_float(v: float) -> str:
    """Shortest decimal string that round-trips the exact double."""
    return repr(float(v))


def _parse_bool(raw: str, line: int) -> bool:
    low = raw.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    raise PlanError(f"expected true or false, got {raw!r}", line=line)


def _parse_int(raw: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise PlanError(f"expected an integer, got {raw!r}", line=line) from None


_TOKEN_RE = re.compile(r"^([a-z0-9\-]+)(?:\((.*)\))?$")


def parse_problem_token(token: str):
    """Turn ``name(k=v,...)`` into a problem spec; bare names use defaults."""
    m = _TOKEN_RE.match(token.strip().lower())
    if not m:
        raise ValueError(f"malformed problem token: {token!r}")
    name, arg_text = m.group(1), m.group(2)
    params = {}
    if arg_text:
        for part in arg_text.split(","):
            if "=" not in part:
                raise ValueError(f"malformed problem parameter: {part!r}")
            key, val = (s.strip() for s in part.split("=", 1))
            try:
                params[key] = int(val)
            except ValueError:
                try:
                    params[key] = float(val)
                except ValueError:
                    raise ValueError(
                        f"problem parameter {key} must be numeric, got {val!r}"
                    ) from None
    n = params.pop("n", None)
    return problems.make_problem(name, n, **params)


def token_slug(token: str) -> str:
    """Filesystem-safe name for a problem token."""
    slug = token.strip().lower()
    for old, new in (("(", "_"), (")", ""), ("=", ""), (",", "_"), (" ", "")):
        slug = slug.replace(old, new)
    return slug.rstrip("_")


@dataclass(frozen=True)
class Cell:
    """One scheduled run: a problem, a scheme, a slowdown, and a replicate."""

    token: str
    scheme: str
    tau: int
    replicate: int
    seed: int


@dataclass
class ExperimentPlan:
    problem_tokens: list
    schemes: list
    taus: list
    replicates: int = 1
    base_seed: int = 0
    base: dict = field(default_factory=dict)
    scheme_overrides: dict = field(default_factory=dict)

    def cells(self):
        out = []
        for token in self.problem_tokens:
            for tau in self.taus:
                for scheme in self.schemes:
                    for rep in range(self.replicates):
                        out.append(Cell(token, scheme, tau, rep,
                                        self.base_seed + rep))
        return out

    def config_for(self, cell: Cell) -> sched.AlgorithmConfig:
        cfg = sched.AlgorithmConfig(tau=cell.tau, seed=cell.seed)
        cfg = replace(cfg, **self.base)
        cfg = replace(cfg, **self.scheme_overrides.get(cell.scheme, {}))
        cfg.validate()
        return cfg


def parse_plan(text: str) -> ExperimentPlan:
    """Parse a plan file; raises PlanError with a line number on bad input."""
    shared: dict = {}
    sections: dict = {}
    current: dict | None = None
    current_name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = re.match(r"^\[scheme:([a-z0-9\-]+)\]$", line)
        if header:
            name = header.group(1)
            if name not in sched.SCHEMES:
                raise PlanError(f"unknown scheme section: {name!r}", line=lineno)
            if name in sections:
                raise PlanError(f"repeated scheme section: {name!r}", line=lineno)
            current = sections.setdefault(name, {})
            current_name = name
            continue
        if line.startswith("["):
            raise PlanError(f"malformed section header: {line!r}", line=lineno)
        if "=" not in line:
            raise PlanError(f"expected key = value, got {line!r}", line=lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if current is None:
            if key not in _GLOBAL_KEYS and key not in _ALGO_KEYS:
                raise PlanError(f"unknown key: {key!r}", line=lineno)
            if key in shared:
                raise PlanError(f"repeated key: {key!r}", line=lineno)
            shared[key] = (value, lineno)
        else:
            if key not in _ALGO_KEYS:
                raise PlanError(
                    f"key {key!r} is not allowed in a scheme section", line=lineno)
            if key in current:
                raise PlanError(f"repeated key {key!r} in section "
                                f"{current_name!r}", line=lineno)
            current[key] = (value, lineno)

    def take(key, default=None):
        if key in shared:
            value, lineno = shared.pop(key)
            return value, lineno
        return default, None

    tokens_raw, tokens_line = take("problems")
    if tokens_raw is None:
        raise PlanError("plan is missing the problems key")
    # group parenthesized arguments that the comma split tears apart
    merged, depth, buf = [], 0, ""
    for piece in tokens_raw.split(","):
        buf = piece if not buf else buf + "," + piece
        depth += piece.count("(") - piece.count(")")
        if depth == 0:
            if buf.strip():
                merged.append(buf.strip())
            buf = ""
    if depth != 0:
        raise PlanError("unbalanced parentheses in problems", line=tokens_line)
    tokens = merged
    if not tokens:
        raise PlanError("problems lists no tokens", line=tokens_line)
    for token in tokens:
        try:
            parse_problem_token(token)
        except ValueError as exc:
            raise PlanError(str(exc), line=tokens_line) from None

    schemes_raw, schemes_line = take("schemes")
    if schemes_raw is None:
        raise PlanError("plan is missing the schemes key")
    schemes = [s.strip().lower() for s in schemes_raw.split(",") if s.strip()]
    if not schemes:
        raise PlanError("schemes lists no names", line=schemes_line)
    for scheme in schemes:
        if scheme not in sched.SCHEMES:
            raise PlanError(f"unknown scheme: {scheme!r}", line=schemes_line)
    if len(set(schemes)) != len(schemes):
        raise PlanError("schemes lists a name twice", line=schemes_line)

    taus_raw, taus_line = take("tau", "5")
    taus = [_parse_int(t.strip(), taus_line) for t in taus_raw.split(",") if t.strip()]
    if not taus or any(t < 2 for t in taus):
        raise PlanError("tau values must be integers >= 2", line=taus_line)

    reps_raw, reps_line = take("replicates", "1")
    replicates = _parse_int(reps_raw, reps_line)
    if replicates < 1:
        raise PlanError("replicates must be at least 1", line=reps_line)

    seed_raw, seed_line = take("base_seed", "0")
    base_seed = _parse_int(seed_raw, seed_line)

    def convert(pairs):
        out = {}
        for key, (value, lineno) in pairs.items():
            kind = _ALGO_KEYS[key]
            out[key] = (_parse_bool(value, lineno) if kind is bool
                        else _parse_int(value, lineno))
        return out

    base = convert(shared)
    overrides = {name: convert(body) for name, body in sections.items()}
    plan = ExperimentPlan(problem_tokens=tokens, schemes=schemes, taus=taus,
                          replicates=replicates, base_seed=base_seed,
                          base=base, scheme_overrides=overrides)
    for cell in plan.cells()[:1]:
        try:
            plan.config_for(cell)
        except ValueError as err:
            raise PlanError(str(err)) from err
    return plan


def _run_cell(args):
    """Module-level worker so process pools can pickle it."""
    cell, cfg = args
    spec = parse_problem_token(cell.token)
    problem = problems.HeterogeneousProblem(spec, cell.tau)
    record = sched.run_scheme(cell.scheme, problem, cfg)
    return cell, record


def execute(plan: ExperimentPlan, workers: int = 1):
    """Run every cell; returns ({cell: record}, [(cell, message), ...])."""
    jobs = [(cell, plan.config_for(cell)) for cell in plan.cells()]
    results: dict = {}
    failures: list = []
    if workers <= 1:
        for job in jobs:
            try:
                cell, record = _run_cell(job)
                results[cell] = record
            except Exception as exc:
                failures.append((job[0], f"{type(exc).__name__}: {exc}"))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_run_cell, job): job[0] for job in jobs}
            for future, cell in futures.items():
                try:
                    _, record = future.result()
                    results[cell] = record
                except Exception as exc:
                    failures.append((cell, f"{type(exc).__name__}: {exc}"))
    failures.sort(key=lambda item: (item[0].token, item[0].scheme,
                                    item[0].tau, item[0].replicate))
    return results, failures


def run_file_name(cell: Cell) -> str:
    return (f"{token_slug(cell.token)}_{cell.scheme}_tau{cell.tau}"
            f"_rep{cell.replicate}.csv")


def write_run_csv(record: sched.RunRecord, path: Path):
    lines = [RUN_HEADER]
    for st in record.stats:
        lines.append(",".join([
            str(st.iteration), str(st.fe_s_used), format_float(st.igd),
            format_float(st.hv), str(st.dt_size), format_float(st.co_mse),
        ]))
    path.write_text("\n".join(lines) + "\n")


def write_front_csv(record: sched.RunRecord, path: Path):
    order = np.lexsort((record.front_f[:, 1], record.front_f[:, 0]))
    lines = ["f1,f2"]
    for f1, f2 in record.front_f[order]:
        lines.append(f"{format_float(f1)},{format_float(f2)}")
    path.write_text("\n".join(lines) + "\n")


def _final_igd(record: sched.RunRecord) -> float:
    return record.stats[-1].igd


def summarize(plan: ExperimentPlan, results: dict) -> list:
    """Aggregate per-cell results into summary rows (strings, CSV-ready)."""
    rows = []
    for token in plan.problem_tokens:
        for tau in plan.taus:
            def runs_for(scheme):
                recs = [results.get(Cell(token, scheme, tau, rep,
                                         plan.base_seed + rep))
                        for rep in range(plan.replicates)]
                return [r for r in recs if r is not None]

            ref_igd = [_final_igd(r) for r in runs_for("tc")]
            for scheme in plan.schemes:
                runs = runs_for(scheme)
                if not runs:
                    continue
                igd_vals = np.array([_final_igd(r) for r in runs])
                hv_vals = np.array([r.stats[-1].hv for r in runs])
                marker = ""
                if len(ref_igd) >= 3 and len(igd_vals) >= 3:
                    _, marker = metrics.wilcoxon_rank_sum(
                        np.array(ref_igd), igd_vals)
                rows.append([
                    token, scheme, str(tau), str(len(runs)),
                    format_float(igd_vals.mean()),
                    format_float(igd_vals.std(ddof=0)),
                    format_float(np.median(igd_vals)),
                    format_float(hv_vals.mean()),
                    format_float(hv_vals.std(ddof=0)),
                    marker,
                ])
    return rows


def write_summary_csv(rows: list, path: Path):
    lines = [SUMMARY_HEADER] + [",".join(row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def emit_convergence(plan: ExperimentPlan, results: dict, token: str, tau: int,
                     csv_path: Path, svg_path: Path | None = None):
    """Long-form igd trace for one problem and slowdown, optionally plotted."""
    series = []
    for scheme in plan.schemes:
        for rep in range(plan.replicates):
            record = results.get(Cell(token, scheme, tau, rep,
                                      plan.base_seed + rep))
            if record is None:
                continue
            trace = [(st.fe_s_used, st.igd) for st in record.stats]
            series.append((scheme, rep, trace))
    lines = [CONVERGENCE_HEADER]
    for scheme, rep, trace in series:
        for fe, igd in trace:
            lines.append(f"{scheme},{rep},{fe},{format_float(igd)}")
    csv_path.write_text("\n".join(lines) + "\n")
    if svg_path is not None:
        svg_path.write_text(_render_svg(plan.schemes, series))


def _render_svg(schemes: list, series: list) -> str:
    """Hand-rolled line chart; deterministic output, no plotting library."""
    width, height = 640.0, 440.0
    left, right, top, bottom = 70.0, 20.0, 20.0, 50.0
    xs = [fe for _, _, trace in series for fe, _ in trace]
    ys = [igd for _, _, trace in series for _, igd in trace
          if math.isfinite(igd)]
    if not xs or not ys:
        return "<svg xmlns='http://www.w3.org/2000/svg' width='640' height='440'/>"
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1
    if y_hi == y_lo:
        y_hi = y_lo + 1

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo) * (width - left - right)

    def sy(v):
        return height - bottom - (v - y_lo) / (y_hi - y_lo) * (height - top - bottom)

    color = {scheme: _SVG_COLORS[i % len(_SVG_COLORS)]
             for i, scheme in enumerate(schemes)}
    parts = [
        f"<svg xmlns='http://www.w3.org/2000/svg' width='{width:g}' "
        f"height='{height:g}' viewBox='0 0 {width:g} {height:g}'>",
        "<rect width='100%' height='100%' fill='white'/>",
        f"<line x1='{left:g}' y1='{height - bottom:g}' x2='{width - right:g}' "
        f"y2='{height - bottom:g}' stroke='black'/>",
        f"<line x1='{left:g}' y1='{top:g}' x2='{left:g}' "
        f"y2='{height - bottom:g}' stroke='black'/>",
        f"<text x='{(left + width - right) / 2:g}' y='{height - 12:g}' "
        "font-size='13' text-anchor='middle'>slow evaluations</text>",
        f"<text x='16' y='{(top + height - bottom) / 2:g}' font-size='13' "
        f"text-anchor='middle' transform='rotate(-90 16 "
        f"{(top + height - bottom) / 2:g})'>igd</text>",
        f"<text x='{left:g}' y='{height - bottom + 16:g}' font-size='11' "
        f"text-anchor='middle'>{x_lo:g}</text>",
        f"<text x='{width - right:g}' y='{height - bottom + 16:g}' "
        f"font-size='11' text-anchor='middle'>{x_hi:g}</text>",
        f"<text x='{left - 6:g}' y='{height - bottom + 4:g}' font-size='11' "
        f"text-anchor='end'>{y_lo:.4g}</text>",
        f"<text x='{left - 6:g}' y='{top + 4:g}' font-size='11' "
        f"text-anchor='end'>{y_hi:.4g}</text>",
    ]
    for scheme, rep, trace in series:
        pts = " ".join(f"{sx(fe):.2f},{sy(igd):.2f}" for fe, igd in trace
                       if math.isfinite(igd))
        if pts:
            parts.append(f"<polyline points='{pts}' fill='none' "
                         f"stroke='{color[scheme]}' stroke-width='1.2' "
                         f"opacity='0.85'/>")
    for i, scheme in enumerate(schemes):
        y = top + 14 + 16 * i
        parts.append(f"<line x1='{width - right - 130:g}' y1='{y:g}' "
                     f"x2='{width - right - 104:g}' y2='{y:g}' "
                     f"stroke='{color[scheme]}' stroke-width='2'/>")
        parts.append(f"<text x='{width - right - 98:g}' y='{y + 4:g}' "
                     f"font-size='12'>{scheme}</text>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def run_benchmark(plan: ExperimentPlan, out_dir: Path, workers: int = 1,
                  stream=None) -> int:
    """Execute a plan and write every report; returns a process exit code."""
    stream = stream or sys.stdout
    out_dir = Path(out_dir)
    runs_dir = out_dir / "runs"
    fronts_dir = out_dir / "fronts"
    runs_dir.mkdir(parents=True, exist_ok=True)
    fronts_dir.mkdir(parents=True, exist_ok=True)

    results, failures = execute(plan, workers=workers)
    for cell in sorted(results, key=lambda c: (c.token, c.scheme, c.tau,
                                               c.replicate)):
        record = results[cell]
        write_run_csv(record, runs_dir / run_file_name(cell))
        write_front_csv(record, fronts_dir / run_file_name(cell))

    rows = summarize(plan, results)
    write_summary_csv(rows, out_dir / "summary.csv")
    for token in plan.problem_tokens:
        for tau in plan.taus:
            slug = f"{token_slug(token)}_tau{tau}"
            emit_convergence(plan, results, token, tau,
                             out_dir / f"convergence_{slug}.csv",
                             out_dir / f"convergence_{slug}.svg")

    widths = [22, 11, 4, 4, 12, 12, 12, 6]
    header = ["problem", "scheme", "tau", "n", "igd_mean", "igd_median",
              "hv_mean", "mark"]
    stream.write(" ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()
                 + "\n")
    for row in rows:
        token, scheme, tau, n, igd_mean, _, igd_median, hv_mean, _, marker = row
        cells = [token[:22], scheme, tau, n, f"{float(igd_mean):.6f}",
                 f"{float(igd_median):.6f}", f"{float(hv_mean):.6f}", marker]
        stream.write(" ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
                     + "\n")
    for cell, message in failures:
        stream.write(f"FAILED {cell.token} {cell.scheme} tau={cell.tau} "
                     f"rep={cell.replicate}: {message}\n")
    return 0 if not failures else 1
