"""Plan parsing, cell enumeration, and report emission tests."""

import numpy as np
import pytest

from hetmoo.errors import PlanError
from hetmoo.harness import (CONVERGENCE_HEADER, RUN_HEADER, SUMMARY_HEADER,
                            Cell, ExperimentPlan, execute, format_float,
                            parse_plan, parse_problem_token, run_benchmark,
                            run_file_name, token_slug)

GOOD_PLAN = """\
# smoke plan
problems = dtlz2(n=5)
schemes = tc, waiting
tau = 3
replicates = 2
base_seed = 11
fe_s_max = 24
n_train = 20
n_max = 20
w_max = 2
front_samples = 100

[scheme:waiting]
w_max = 1
"""


def test_parse_problem_token_forms():
    assert parse_problem_token("dtlz2").n == 11
    assert parse_problem_token("dtlz2(n=6)").n == 6
    spec = parse_problem_token("cm-onemax(corr=-0.5, n=8, seed=2)")
    assert spec.n == 8 and spec.corr == -0.5
    assert parse_problem_token("UF3").name == "uf3"
    with pytest.raises(ValueError):
        parse_problem_token("dtlz2(n)")
    with pytest.raises(ValueError):
        parse_problem_token("dtlz2(n=abc)")
    with pytest.raises(ValueError):
        parse_problem_token("what is this")


def test_token_slug():
    assert token_slug("dtlz2") == "dtlz2"
    assert token_slug("cm-onemax(corr=1, n=10)") == "cm-onemax_corr1_n10"
    assert token_slug("DTLZ2(n=5)") == "dtlz2_n5"


def test_format_float_round_trip():
    for v in (0.1, 1.0 / 3.0, 2e-17, 123456.789, float("nan")):
        s = format_float(v)
        if s == "nan":
            continue
        assert float(s) == v


def test_parse_plan_happy_path():
    plan = parse_plan(GOOD_PLAN)
    assert plan.problem_tokens == ["dtlz2(n=5)"]
    assert plan.schemes == ["tc", "waiting"]
    assert plan.taus == [3]
    assert plan.replicates == 2
    assert plan.base_seed == 11
    assert plan.base["fe_s_max"] == 24
    assert plan.scheme_overrides == {"waiting": {"w_max": 1}}

    cells = plan.cells()
    assert len(cells) == 4
    assert cells[0] == Cell("dtlz2(n=5)", "tc", 3, 0, 11)
    assert cells[1] == Cell("dtlz2(n=5)", "tc", 3, 1, 12)
    cfg_tc = plan.config_for(cells[0])
    assert cfg_tc.w_max == 2 and cfg_tc.seed == 11 and cfg_tc.tau == 3
    cfg_wait = plan.config_for(Cell("dtlz2(n=5)", "waiting", 3, 0, 11))
    assert cfg_wait.w_max == 1


def test_parse_plan_defaults():
    plan = parse_plan("problems = dtlz2\nschemes = tc\n")
    assert plan.taus == [5]
    assert plan.replicates == 1
    assert plan.base_seed == 0
    assert plan.base == {}


def test_parse_plan_multiple_problem_tokens():
    plan = parse_plan(
        "problems = dtlz2(n=6), cm-onemax(corr=1, n=8), uf1(n=5)\n"
        "schemes = tc\n")
    assert plan.problem_tokens == ["dtlz2(n=6)", "cm-onemax(corr=1, n=8)",
                                   "uf1(n=5)"]


@pytest.mark.parametrize("text,needle,line", [
    ("schemes = tc\n", "missing the problems", None),
    ("problems = dtlz2\n", "missing the schemes", None),
    ("problems = dtlz2\nschemes = tc\nbogus = 1\n", "unknown key", 3),
    ("problems = dtlz2\nschemes = tc\ntau = 1\n", "tau values", 3),
    ("problems = dtlz2\nschemes = tc\ntau = x\n", "expected an integer", 3),
    ("problems = dtlz2\nschemes = tc\nreplicates = 0\n", "replicates", 3),
    ("problems = dtlz2\nschemes = nope\n", "unknown scheme", 2),
    ("problems = dtlz2\nschemes = tc, tc\n", "twice", 2),
    ("problems = dtlz9\nschemes = tc\n", "unknown problem", 1),
    ("problems = dtlz2(n=2,\nschemes = tc\n", "unbalanced", 1),
    ("problems = dtlz2\nproblems = uf1\nschemes = tc\n", "repeated key", 2),
    ("problems = dtlz2\nschemes = tc\njust words\n", "key = value", 3),
    ("problems = dtlz2\nschemes = tc\n[scheme:nope]\n", "unknown scheme", 3),
    ("problems = dtlz2\nschemes = tc\n[broken\n", "malformed section", 3),
    ("problems = dtlz2\nschemes = tc\n[scheme:tc]\ntau = 7\n",
     "not allowed in a scheme section", 4),
    ("problems = dtlz2\nschemes = tc\n[scheme:tc]\nu = 1\n[scheme:tc]\n",
     "repeated scheme section", 5),
    ("problems = dtlz2\nschemes = tc\naccumulate_transfer = 7\n",
     "true or false", 3),
    ("problems = dtlz2\nschemes = tc\nfe_s_max = 10\nn_train = 20\n",
     "cover the initial design", None),
])
def test_parse_plan_errors(text, needle, line):
    with pytest.raises(PlanError) as err:
        parse_plan(text)
    assert needle in str(err.value)
    if line is not None:
        assert f"line {line}" in str(err.value)


def test_plan_error_without_problems_on_empty_file():
    with pytest.raises(PlanError):
        parse_plan("")


def test_run_file_name():
    cell = Cell("dtlz2(n=5)", "tc", 3, 1, 4)
    assert run_file_name(cell) == "dtlz2_n5_tc_tau3_rep1.csv"


def _tiny_plan(schemes="tc, waiting", replicates=1):
    return parse_plan(
        f"problems = dtlz2(n=5)\nschemes = {schemes}\ntau = 3\n"
        f"replicates = {replicates}\nfe_s_max = 23\nn_train = 20\n"
        "n_max = 20\nw_max = 1\nfront_samples = 100\n")


def test_execute_and_reports(tmp_path):
    plan = _tiny_plan()
    results, failures = execute(plan)
    assert failures == []
    assert len(results) == 2

    code = run_benchmark(plan, tmp_path, stream=open(tmp_path / "out.txt", "w"))
    assert code == 0
    run_csv = tmp_path / "runs" / "dtlz2_n5_tc_tau3_rep0.csv"
    front_csv = tmp_path / "fronts" / "dtlz2_n5_tc_tau3_rep0.csv"
    summary = tmp_path / "summary.csv"
    conv_csv = tmp_path / "convergence_dtlz2_n5_tau3.csv"
    conv_svg = tmp_path / "convergence_dtlz2_n5_tau3.svg"
    for path in (run_csv, front_csv, summary, conv_csv, conv_svg):
        assert path.exists(), path

    run_lines = run_csv.read_text().splitlines()
    assert run_lines[0] == RUN_HEADER
    assert len(run_lines) == 3          # snapshot 0 plus one iteration
    first = run_lines[1].split(",")
    assert first[0] == "0" and first[1] == "20"

    front_lines = front_csv.read_text().splitlines()
    assert front_lines[0] == "f1,f2"
    f1 = [float(l.split(",")[0]) for l in front_lines[1:]]
    assert f1 == sorted(f1)

    summary_lines = summary.read_text().splitlines()
    assert summary_lines[0] == SUMMARY_HEADER
    assert len(summary_lines) == 3
    assert summary_lines[1].startswith("dtlz2(n=5),tc,3,1,")
    # single replicate: no rank-sum marker
    assert summary_lines[1].endswith(",")

    conv_lines = conv_csv.read_text().splitlines()
    assert conv_lines[0] == CONVERGENCE_HEADER
    assert conv_lines[1].startswith("tc,0,20,")
    svg = conv_svg.read_text()
    assert svg.startswith("<svg ") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 2

    table = (tmp_path / "out.txt").read_text()
    assert "dtlz2(n=5)" in table and "waiting" in table


def test_rerun_is_byte_identical(tmp_path):
    plan = _tiny_plan()
    a_dir = tmp_path / "a"
    b_dir = tmp_path / "b"
    for d in (a_dir, b_dir):
        code = run_benchmark(plan, d, stream=open(d.parent / "void.txt", "w"))
        assert code == 0
    for rel in ("summary.csv", "runs/dtlz2_n5_tc_tau3_rep0.csv",
                "fronts/dtlz2_n5_waiting_tau3_rep0.csv",
                "convergence_dtlz2_n5_tau3.csv",
                "convergence_dtlz2_n5_tau3.svg"):
        assert (a_dir / rel).read_bytes() == (b_dir / rel).read_bytes(), rel


def test_summary_markers_with_replicates(tmp_path):
    plan = _tiny_plan(schemes="tc, nt", replicates=3)
    results, failures = execute(plan)
    assert failures == []
    from hetmoo.harness import summarize

    rows = summarize(plan, results)
    assert len(rows) == 2
    by_scheme = {row[1]: row for row in rows}
    assert by_scheme["tc"][3] == "3"
    assert by_scheme["tc"][9] in ("+", "-", "~")
    assert by_scheme["nt"][9] in ("+", "-", "~")


def test_execute_collects_failures():
    plan = ExperimentPlan(problem_tokens=["dtlz2(n=5)"], schemes=["tc"],
                          taus=[3], base={"fe_s_max": 21, "n_train": 20,
                                          "n_max": 20, "w_max": 1,
                                          "front_samples": 100})
    # sabotage the token after validation to force a runtime failure
    plan.problem_tokens = ["dtlz2(n=0)"]
    results, failures = execute(plan)
    assert results == {}
    assert len(failures) == 1
    assert "dtlz2(n=0)" == failures[0][0].token
