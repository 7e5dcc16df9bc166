"""Run drivers: the transfer co-surrogate algorithm, its ablations, and baselines.

Every driver shares the same accounting: the slow objective may be evaluated
at most ``fe_s_max`` times and the fast objective at most ``tau`` times that.
The transfer scheme and the interleaving baselines keep the two budgets in
lockstep (fast = tau * slow at every iteration boundary); the waiting baseline
deliberately wastes the surplus fast capacity; fast-first spends the whole
fast budget up front.

Schemes are addressed by identifier: ``tc`` (transfer through a difference
surrogate), ``nt`` (no transfer), ``ns`` (no selection filter), ``tcp``
(quadratic difference model), ``waiting``, ``fast-first``, ``bi`` (brood
interleaving), ``si`` (speculative interleaving).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import gp, metrics, problems, transfer
from .acquisition import AcquisitionConfig, sample_additional, select_infill
from .errors import InternalConsistencyError
from .evo import (EvoConfig, Population, apd_select, lhs_sample,
                  reference_vectors, soea_optimize, surrogate_rvea, variation)

TC_VARIANTS = ("tc", "nt", "ns", "tcp")
SCHEMES = TC_VARIANTS + ("waiting", "fast-first", "bi", "si")


@dataclass(frozen=True)
class AlgorithmConfig:
    """Shared knobs for every scheme; drivers ignore the fields they do not use."""

    fe_s_max: int = 200
    tau: int = 5
    u: int = 3
    w_max: int = 20
    n_train: int = 100
    n_max: int = 100
    seed: int = 0
    variant: str = "tc"
    front_samples: int = 500
    co_mse_diagnostic: bool = True
    accumulate_transfer: bool = False
    baseline_pop: int = 30
    fast_first_reserve: int = 0
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    evo: EvoConfig = field(default_factory=EvoConfig)

    def validate(self):
        if not isinstance(self.tau, (int, np.integer)) or self.tau < 2:
            raise ValueError("tau must be an integer >= 2")
        if self.u < 1:
            raise ValueError("u must be at least 1")
        if self.w_max < 1:
            raise ValueError("w_max must be at least 1")
        if self.n_train < 2:
            raise ValueError("n_train must be at least 2")
        if self.fe_s_max < self.n_train:
            raise ValueError("fe_s_max must cover the initial design")
        if self.n_max < 2 or self.n_max % 2:
            raise ValueError("n_max must be an even number >= 2")
        if self.baseline_pop < 2:
            raise ValueError("baseline_pop must be at least 2")
        if self.fast_first_reserve < 0:
            raise ValueError("fast_first_reserve must be nonnegative")
        if self.variant not in TC_VARIANTS:
            raise ValueError(f"unknown variant: {self.variant!r}")


@dataclass
class BudgetLedger:
    """Evaluation counters with hard caps on both objectives."""

    fe_s_max: int
    fe_f_max: int
    fe_s_used: int = 0
    fe_f_used: int = 0

    def charge_slow(self, k: int):
        if k < 0 or self.fe_s_used + k > self.fe_s_max:
            raise InternalConsistencyError(
                f"slow budget overrun: {self.fe_s_used}+{k} > {self.fe_s_max}")
        self.fe_s_used += k

    def charge_fast(self, k: int):
        if k < 0 or self.fe_f_used + k > self.fe_f_max:
            raise InternalConsistencyError(
                f"fast budget overrun: {self.fe_f_used}+{k} > {self.fe_f_max}")
        self.fe_f_used += k

    def assert_lockstep(self, tau: int):
        if self.fe_f_used != tau * self.fe_s_used:
            raise InternalConsistencyError(
                f"lockstep broken: fe_f={self.fe_f_used}, "
                f"tau*fe_s={tau * self.fe_s_used}")


@dataclass
class IterationStats:
    iteration: int
    fe_s_used: int
    fe_f_used: int
    igd: float
    hv: float
    dt_size: int
    co_mse: float
    gp_s_training: str = ""


@dataclass
class TransferLog:
    """Synthetic rows admitted to the transfer set, with the interval that let them in."""

    iteration: list = field(default_factory=list)
    y_syn: list = field(default_factory=list)
    y_slow_mean: list = field(default_factory=list)
    sigma_slow: list = field(default_factory=list)

    def extend(self, it: int, batch: transfer.TransferBatch):
        sel = batch.selected
        self.iteration.extend([it] * int(sel.sum()))
        self.y_syn.extend(batch.y_syn[sel].tolist())
        self.y_slow_mean.extend(batch.y_slow_mean[sel].tolist())
        self.sigma_slow.extend(batch.sigma_slow[sel].tolist())


@dataclass
class RunRecord:
    problem: str
    scheme: str
    tau: int
    seed: int
    config: dict
    stats: list
    archive_x: np.ndarray
    archive_f: np.ndarray
    front_x: np.ndarray
    front_f: np.ndarray
    fe_s_used: int
    fe_f_used: int
    transfer_log: TransferLog
    wall_time: float

    def validate(self):
        if len(self.archive_f) != self.fe_s_used:
            raise InternalConsistencyError("archive size differs from slow budget use")
        if len(self.stats) != self.stats[-1].iteration + 1:
            raise InternalConsistencyError("metric trace length is off by one")
        mask = metrics.nondominated_mask(self.front_f)
        if not mask.all():
            raise InternalConsistencyError("final front contains dominated rows")


class _Recorder:
    """Accumulates the archive and per-iteration metrics against the true front."""

    def __init__(self, problem: problems.HeterogeneousProblem, cfg: AlgorithmConfig):
        self.front_ref = problems.pareto_front_samples(problem.spec, cfg.front_samples)
        self.hv_ref = 1.1 * self.front_ref.max(axis=0)
        self.arch_x: list = []
        self.arch_f: list = []
        self.stats: list = []

    def add_archive(self, x: np.ndarray, f: np.ndarray):
        self.arch_x.extend(np.atleast_2d(x))
        self.arch_f.extend(np.atleast_2d(f))

    def snapshot(self, it: int, ledger: BudgetLedger, dt_size: int = 0,
                 co_mse: float = float("nan"), gp_s_training: str = ""):
        f = np.asarray(self.arch_f)
        nd = f[metrics.nondominated_mask(f)]
        self.stats.append(IterationStats(
            iteration=it,
            fe_s_used=ledger.fe_s_used,
            fe_f_used=ledger.fe_f_used,
            igd=metrics.igd(self.front_ref, nd),
            hv=metrics.hypervolume_2d(nd, self.hv_ref),
            dt_size=dt_size,
            co_mse=co_mse,
            gp_s_training=gp_s_training,
        ))

    def finish(self, problem, cfg, scheme: str, ledger: BudgetLedger,
               tlog: TransferLog, started: float) -> RunRecord:
        arch_x = np.asarray(self.arch_x)
        arch_f = np.asarray(self.arch_f)
        mask = metrics.nondominated_mask(arch_f)
        record = RunRecord(
            problem=problem.spec.name,
            scheme=scheme,
            tau=problem.tau,
            seed=cfg.seed,
            config=asdict(cfg),
            stats=self.stats,
            archive_x=arch_x,
            archive_f=arch_f,
            front_x=arch_x[mask],
            front_f=arch_f[mask],
            fe_s_used=ledger.fe_s_used,
            fe_f_used=ledger.fe_f_used,
            transfer_log=tlog,
            wall_time=time.perf_counter() - started,
        )
        record.validate()
        return record


def _eval_rows(problem: problems.HeterogeneousProblem, x: np.ndarray) -> np.ndarray:
    return np.array([problem.evaluate_both(row) for row in np.atleast_2d(x)])


def _fit_cfg(problem: problems.HeterogeneousProblem) -> gp.FitConfig:
    return gp.FitConfig(bounds=problem.bounds)


def _warm_population(data: transfer.TrainingSets, size: int, bounds, rng,
                     carry=None) -> Population:
    """Inner-loop start: nondominated archive members, then rows carried over
    from the previous inner run, topped up with fresh samples."""
    f = np.column_stack([data.y_fast, data.y_slow])
    nd = np.flatnonzero(metrics.nondominated_mask(f))
    if len(nd) > size:
        nd = rng.permutation(nd)[:size]
    x = data.x[nd]
    if carry is not None and len(x) < size:
        x = np.vstack([x, carry])[:size]
    if len(x) < size:
        x = np.vstack([x, lhs_sample(size - len(x), bounds, rng)])
    return Population(x)


def _predict_candidates(models, x):
    means, stds = [], []
    for model in models:
        m, v = gp.predict_many(model, x)
        means.append(m)
        stds.append(np.sqrt(v))
    return np.column_stack(means), np.column_stack(stds)


def run_tc_saea(problem: problems.HeterogeneousProblem,
                cfg: AlgorithmConfig) -> RunRecord:
    """Transfer co-surrogate run (variants: tc, nt, ns, tcp via cfg.variant)."""
    cfg.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tau = problem.tau
    bounds = problem.bounds
    fit_cfg = _fit_cfg(problem)
    refs = reference_vectors(cfg.evo.ref_divisions)
    ledger = BudgetLedger(cfg.fe_s_max, tau * cfg.fe_s_max)
    rec = _Recorder(problem, cfg)
    tlog = TransferLog()

    # initial design, evaluated on both objectives
    x0 = lhs_sample(cfg.n_train, bounds, rng)
    f0 = _eval_rows(problem, x0)
    ledger.charge_slow(cfg.n_train)
    ledger.charge_fast(cfg.n_train)
    data = transfer.TrainingSets(x0, f0[:, 1], f0[:, 0])
    rec.add_archive(x0, f0)

    # burn the fast surplus of the initial design on a single-objective search
    soea_budget = cfg.n_train * (tau - 1)
    sx, sy = soea_optimize(problem.evaluate_fast, soea_budget, bounds, cfg.evo, rng)
    ledger.charge_fast(soea_budget)
    data.add_fast(sx, sy)
    ledger.assert_lockstep(tau)
    rec.snapshot(0, ledger)

    carry_x = np.empty((0, problem.n))
    carry_y = np.empty(0)
    inner_x = None
    it = 0
    while ledger.fe_s_used < cfg.fe_s_max:
        it += 1
        data.set_transfer(carry_x, carry_y)

        # cap the three training sets, then fit; every tau-th iteration
        # retrains the slow surrogate on measured data alone.  The fast
        # surrogate trains on the jointly evaluated rows only: the fast-only
        # archive is search-biased (single-objective burn-in, tight local
        # boxes) and its clusters of near-duplicates degrade the fit.
        ds_x, ds_y = transfer.cap_training_set(data.x, data.y_slow, cfg.n_max, rng)
        df_x, df_y = transfer.cap_training_set(data.x, data.y_fast, cfg.n_max, rng)
        dc_x, dc_y = transfer.cap_training_set(data.x, data.y_diff, cfg.n_max, rng)
        gp_fast = gp.fit(df_x, df_y, fit_cfg)
        if data.transfer_size and it % tau != 0:
            gs_x = np.vstack([ds_x, data.x_transfer])
            gs_y = np.concatenate([ds_y, data.y_transfer])
            gs_tag = "ds+dt"
        else:
            gs_x, gs_y, gs_tag = ds_x, ds_y, "ds"
        gp_slow = gp.fit(gs_x, gs_y, fit_cfg)
        if cfg.variant == "nt":
            co_model = None
        elif cfg.variant == "tcp":
            co_model = transfer.QuadraticCoSurrogate(dc_x, dc_y)
        else:
            co_model = gp.fit(dc_x, dc_y, fit_cfg)

        # optimize the surrogates and pick the infill batch
        init = _warm_population(data, cfg.evo.inner_pop, bounds, rng, inner_x)
        cand = surrogate_rvea((gp_fast, gp_slow), init, cfg.w_max, cfg.evo, rng, bounds)
        inner_x = cand.x
        progress = ledger.fe_s_used / cfg.fe_s_max
        u_eff = min(cfg.u, cfg.fe_s_max - ledger.fe_s_used)
        means, stds = _predict_candidates((gp_fast, gp_slow), cand.x)
        x_new, _ = select_infill(cand.x, means, stds, refs, progress, u_eff,
                                 cfg.acquisition, alpha=cfg.evo.apd_alpha,
                                 existing=data.x, bounds=bounds, rng=rng,
                                 iteration=it)
        u_act = len(x_new)
        f_new = _eval_rows(problem, x_new)
        ledger.charge_slow(u_act)
        ledger.charge_fast(u_act)
        data.add_paired(x_new, f_new[:, 1], f_new[:, 0])
        rec.add_archive(x_new, f_new)

        # surplus fast evaluations around the infill points
        x_a = sample_additional(x_new, u_act, tau, bounds, rng)
        y_f_a = np.array([problem.evaluate_fast(p) for p in x_a])
        ledger.charge_fast(u_act * (tau - 1))
        data.add_fast(x_a, y_f_a)

        dt_size = 0
        co_mse = float("nan")
        new_x = np.empty((0, problem.n))
        new_y = np.empty(0)
        if co_model is not None:
            y_diff_pred, y_syn = transfer.synthesize_slow_labels(co_model, x_a, y_f_a)
            if cfg.co_mse_diagnostic:
                # true slow values on the auxiliary batch; diagnostic only, never charged
                true_diff = np.array([problem.evaluate_slow(p) for p in x_a]) - y_f_a
                co_mse = float(np.mean((y_diff_pred - true_diff) ** 2))
            if cfg.variant == "ns":
                new_x, new_y = x_a, y_syn
            else:
                batch = transfer.TransferBatch(x=x_a, y_fast=y_f_a,
                                               y_diff_pred=y_diff_pred, y_syn=y_syn)
                batch = transfer.select_transferable(gp_slow, batch)
                tlog.extend(it, batch)
                new_x, new_y = x_a[batch.selected], y_syn[batch.selected]
            dt_size = len(new_x)

        # transfer rows feed the next iteration's slow-surrogate fit
        if cfg.accumulate_transfer:
            carry_x = np.vstack([carry_x, new_x])
            carry_y = np.concatenate([carry_y, new_y])
        else:
            carry_x, carry_y = new_x, new_y

        ledger.assert_lockstep(tau)
        rec.snapshot(it, ledger, dt_size, co_mse, gs_tag)

    return rec.finish(problem, cfg, cfg.variant, ledger, tlog, started)


def run_waiting(problem: problems.HeterogeneousProblem,
                cfg: AlgorithmConfig) -> RunRecord:
    """Surrogate loop that idles the fast objective while the slow one runs.

    Both surrogates train on jointly evaluated points only, so the fast
    budget trails the slow one exactly one-for-one.
    """
    cfg.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    bounds = problem.bounds
    fit_cfg = _fit_cfg(problem)
    refs = reference_vectors(cfg.evo.ref_divisions)
    ledger = BudgetLedger(cfg.fe_s_max, problem.tau * cfg.fe_s_max)
    rec = _Recorder(problem, cfg)

    x0 = lhs_sample(cfg.n_train, bounds, rng)
    f0 = _eval_rows(problem, x0)
    ledger.charge_slow(cfg.n_train)
    ledger.charge_fast(cfg.n_train)
    data = transfer.TrainingSets(x0, f0[:, 1], f0[:, 0])
    rec.add_archive(x0, f0)
    rec.snapshot(0, ledger)

    inner_x = None
    it = 0
    while ledger.fe_s_used < cfg.fe_s_max:
        it += 1
        ds_x, ds_y = transfer.cap_training_set(data.x, data.y_slow, cfg.n_max, rng)
        df_x, df_y = transfer.cap_training_set(data.x, data.y_fast, cfg.n_max, rng)
        gp_fast = gp.fit(df_x, df_y, fit_cfg)
        gp_slow = gp.fit(ds_x, ds_y, fit_cfg)

        init = _warm_population(data, cfg.evo.inner_pop, bounds, rng, inner_x)
        cand = surrogate_rvea((gp_fast, gp_slow), init, cfg.w_max, cfg.evo, rng, bounds)
        inner_x = cand.x
        progress = ledger.fe_s_used / cfg.fe_s_max
        u_eff = min(cfg.u, cfg.fe_s_max - ledger.fe_s_used)
        means, stds = _predict_candidates((gp_fast, gp_slow), cand.x)
        x_new, _ = select_infill(cand.x, means, stds, refs, progress, u_eff,
                                 cfg.acquisition, alpha=cfg.evo.apd_alpha,
                                 existing=data.x, bounds=bounds, rng=rng,
                                 iteration=it)
        u_act = len(x_new)
        f_new = _eval_rows(problem, x_new)
        ledger.charge_slow(u_act)
        ledger.charge_fast(u_act)
        data.add_paired(x_new, f_new[:, 1], f_new[:, 0])
        rec.add_archive(x_new, f_new)

        if ledger.fe_f_used != ledger.fe_s_used:
            raise InternalConsistencyError("waiting must keep both budgets equal")
        rec.snapshot(it, ledger, gp_s_training="ds")

    return rec.finish(problem, cfg, "waiting", ledger, TransferLog(), started)


def run_fast_first(problem: problems.HeterogeneousProblem,
                   cfg: AlgorithmConfig) -> RunRecord:
    """Spend the whole fast budget searching f1, then measure f2 on the best finds."""
    cfg.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tau = problem.tau
    bounds = problem.bounds
    ledger = BudgetLedger(cfg.fe_s_max, tau * cfg.fe_s_max)
    rec = _Recorder(problem, cfg)

    phase1 = tau * cfg.fe_s_max - cfg.fast_first_reserve
    sx, sy = soea_optimize(problem.evaluate_fast, phase1, bounds, cfg.evo, rng)
    ledger.charge_fast(phase1)

    # best distinct solutions, best first
    order = np.argsort(sy, kind="stable")
    sx, sy = sx[order], sy[order]
    _, first = np.unique(np.round(sx, 9), axis=0, return_index=True)
    keep = np.sort(first)
    sx, sy = sx[keep][:cfg.fe_s_max], sy[keep][:cfg.fe_s_max]

    it = 0
    for start in range(0, len(sx), cfg.u):
        batch_x = sx[start:start + cfg.u]
        batch_yf = sy[start:start + cfg.u]
        y_s = np.array([problem.evaluate_slow(p) for p in batch_x])
        ledger.charge_slow(len(batch_x))
        rec.add_archive(batch_x, np.column_stack([batch_yf, y_s]))
        rec.snapshot(it, ledger)
        it += 1

    return rec.finish(problem, cfg, "fast-first", ledger, TransferLog(), started)


def _baseline_init(problem, cfg, rng, ledger, rec):
    pop_x = lhs_sample(cfg.baseline_pop, problem.bounds, rng)
    pop_f = _eval_rows(problem, pop_x)
    ledger.charge_slow(cfg.baseline_pop)
    ledger.charge_fast(cfg.baseline_pop)
    rec.add_archive(pop_x, pop_f)
    return pop_x, pop_f


def run_brood_interleaving(problem: problems.HeterogeneousProblem,
                           cfg: AlgorithmConfig) -> RunRecord:
    """Plain generational MOEA that breeds extra fast-only offspring each generation.

    While a generation's slow evaluations are pending, tau-1 broods per slow
    evaluation are screened on the fast objective; the best of them join the
    next generation's variation pool.
    """
    cfg.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tau = problem.tau
    bounds = problem.bounds
    refs = reference_vectors(cfg.baseline_pop - 1)
    ledger = BudgetLedger(cfg.fe_s_max, tau * cfg.fe_s_max)
    rec = _Recorder(problem, cfg)

    pop_x, pop_f = _baseline_init(problem, cfg, rng, ledger, rec)
    brood_parents = pop_x[rng.integers(0, len(pop_x), size=(tau - 1) * cfg.baseline_pop)]
    brood_x = variation(brood_parents, bounds, cfg.evo.variation, rng)
    brood_yf = np.array([problem.evaluate_fast(p) for p in brood_x])
    ledger.charge_fast((tau - 1) * cfg.baseline_pop)
    ledger.assert_lockstep(tau)
    rec.snapshot(0, ledger)

    it = 0
    while ledger.fe_s_used < cfg.fe_s_max:
        it += 1
        afford = min(cfg.baseline_pop, cfg.fe_s_max - ledger.fe_s_used)
        top = np.argsort(brood_yf, kind="stable")[:cfg.baseline_pop]
        pool = np.vstack([pop_x, brood_x[top]])

        parents = pool[rng.integers(0, len(pool), size=afford)]
        off_x = variation(parents, bounds, cfg.evo.variation, rng)
        off_f = _eval_rows(problem, off_x)
        ledger.charge_slow(afford)
        ledger.charge_fast(afford)
        rec.add_archive(off_x, off_f)

        comb_x = np.vstack([pop_x, off_x])
        comb_f = np.vstack([pop_f, off_f])
        keep = apd_select(comb_f - comb_f.min(axis=0), refs,
                          ledger.fe_s_used / cfg.fe_s_max, cfg.evo.apd_alpha)
        pop_x, pop_f = comb_x[keep], comb_f[keep]

        brood_parents = pool[rng.integers(0, len(pool), size=(tau - 1) * afford)]
        brood_x = variation(brood_parents, bounds, cfg.evo.variation, rng)
        brood_yf = np.array([problem.evaluate_fast(p) for p in brood_x])
        ledger.charge_fast((tau - 1) * afford)

        ledger.assert_lockstep(tau)
        rec.snapshot(it, ledger)

    return rec.finish(problem, cfg, "bi", ledger, TransferLog(), started)


def run_speculative_interleaving(problem: problems.HeterogeneousProblem,
                                 cfg: AlgorithmConfig) -> RunRecord:
    """Plain generational MOEA with a fast-objective GA running in the gaps.

    The GA consumes each generation's fast surplus, continues from its own
    best finds, and injects them into the next variation pool.
    """
    cfg.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tau = problem.tau
    bounds = problem.bounds
    refs = reference_vectors(cfg.baseline_pop - 1)
    ledger = BudgetLedger(cfg.fe_s_max, tau * cfg.fe_s_max)
    rec = _Recorder(problem, cfg)

    pop_x, pop_f = _baseline_init(problem, cfg, rng, ledger, rec)

    def speculate(seed_x, seed_y, budget):
        pairs_x, pairs_y = soea_optimize(
            problem.evaluate_fast, budget, bounds, cfg.evo, rng,
            seeds=(seed_x, seed_y),
            popsize=min(cfg.evo.soea_pop, budget))
        ledger.charge_fast(budget)
        best = np.argsort(pairs_y, kind="stable")[:cfg.baseline_pop]
        return pairs_x[best], pairs_y[best]

    spec_x, spec_y = speculate(pop_x, pop_f[:, 0], (tau - 1) * cfg.baseline_pop)
    ledger.assert_lockstep(tau)
    rec.snapshot(0, ledger)

    it = 0
    while ledger.fe_s_used < cfg.fe_s_max:
        it += 1
        afford = min(cfg.baseline_pop, cfg.fe_s_max - ledger.fe_s_used)
        pool = np.vstack([pop_x, spec_x])

        parents = pool[rng.integers(0, len(pool), size=afford)]
        off_x = variation(parents, bounds, cfg.evo.variation, rng)
        off_f = _eval_rows(problem, off_x)
        ledger.charge_slow(afford)
        ledger.charge_fast(afford)
        rec.add_archive(off_x, off_f)

        comb_x = np.vstack([pop_x, off_x])
        comb_f = np.vstack([pop_f, off_f])
        keep = apd_select(comb_f - comb_f.min(axis=0), refs,
                          ledger.fe_s_used / cfg.fe_s_max, cfg.evo.apd_alpha)
        pop_x, pop_f = comb_x[keep], comb_f[keep]

        seed_x = np.vstack([pop_x, spec_x])
        seed_y = np.concatenate([pop_f[:, 0], spec_y])
        spec_x, spec_y = speculate(seed_x, seed_y, (tau - 1) * afford)

        ledger.assert_lockstep(tau)
        rec.snapshot(it, ledger)

    return rec.finish(problem, cfg, "si", ledger, TransferLog(), started)


def run_scheme(scheme: str, problem: problems.HeterogeneousProblem,
               cfg: AlgorithmConfig) -> RunRecord:
    """Dispatch a scheme identifier to its driver."""
    scheme = scheme.lower()
    if scheme in TC_VARIANTS:
        return run_tc_saea(problem, replace(cfg, variant=scheme))
    if scheme == "waiting":
        return run_waiting(problem, cfg)
    if scheme == "fast-first":
        return run_fast_first(problem, cfg)
    if scheme == "bi":
        return run_brood_interleaving(problem, cfg)
    if scheme == "si":
        return run_speculative_interleaving(problem, cfg)
    raise ValueError(f"unknown scheme: {scheme!r}")
