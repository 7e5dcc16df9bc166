import numpy as np
from hetmoo import gp, problems, transfer
from hetmoo.evo import (lhs_sample, Population, EvoConfig, reference_vectors,
                        surrogate_rvea, apd_values)
from hetmoo.acquisition import AcquisitionConfig
from hetmoo.metrics import nondominated_mask, igd
import hetmoo.gp as G

spec = problems.make_problem("dtlz2")
prob = problems.HeterogeneousProblem(spec, 5)
front = problems.pareto_front_samples(spec, 500)


def pick_normalized(cand_x, means, stds, refs, progress, u, beta, rng):
    scores = means - beta * stds
    lo = scores.min(axis=0)
    span = np.where(scores.max(axis=0) - lo > 0, scores.max(axis=0) - lo, 1.0)
    scored = (scores - lo) / span
    assign, apd = apd_values(scored, refs, progress, 2.0)
    winners = {}
    for i, v in enumerate(assign):
        if v not in winners or apd[i] < apd[winners[v]]:
            winners[v] = i
    idx = sorted(winners.values(), key=lambda i: apd[i])
    idx = idx[:u]
    rest = [i for i in np.argsort(apd, kind="stable") if i not in idx]
    while len(idx) < u and rest:
        idx.append(rest.pop(0))
    return cand_x[idx]


def pick_rotation(cand_x, means, stds, refs, progress, u, beta, rng, it):
    scores = means - beta * stds
    assign, apd = apd_values(scores - scores.min(axis=0), refs, progress, 2.0)
    winners = {}
    for i, v in enumerate(assign):
        if v not in winners or apd[i] < apd[winners[v]]:
            winners[v] = i
    nv = len(refs)
    order = [(it * u + j) % nv for j in range(nv)]
    idx = [winners[v] for v in order if v in winners][:u]
    rest = [i for i in np.argsort(apd, kind="stable") if i not in idx]
    while len(idx) < u and rest:
        idx.append(rest.pop(0))
    return cand_x[idx]


def run(mode, seed, iters=20):
    rng = np.random.default_rng(seed)
    bounds = prob.bounds
    ecfg = EvoConfig()
    refs = reference_vectors(ecfg.ref_divisions)
    x = lhs_sample(100, bounds, rng)
    f = np.array([prob.evaluate_both(r) for r in x])
    fitc = gp.FitConfig(bounds=bounds)
    fe_max = 100 + 3 * iters
    for it in range(1, iters + 1):
        cx, cy = transfer.cap_training_set(x, f[:, 0], 100, rng)
        gf = gp.fit(cx, cy, fitc)
        cx2, cy2 = transfer.cap_training_set(x, f[:, 1], 100, rng)
        gs = gp.fit(cx2, cy2, fitc)
        nd = np.flatnonzero(nondominated_mask(f))
        if len(nd) > 50:
            nd = rng.permutation(nd)[:50]
        ix = x[nd]
        if len(ix) < 50:
            ix = np.vstack([ix, lhs_sample(50 - len(ix), bounds, rng)])
        cand = surrogate_rvea((gf, gs), Population(ix), 20, ecfg, rng, bounds)
        fe = 100 + 3 * (it - 1)
        progress = fe / fe_max
        beta = 3.0 * (1 - progress) + 0.5 * progress
        mf, vf = G.predict_many(gf, cand.x)
        ms, vs = G.predict_many(gs, cand.x)
        means = np.column_stack([mf, ms])
        stds = np.sqrt(np.column_stack([vf, vs]))
        if mode == "norm":
            xn = pick_normalized(cand.x, means, stds, refs, progress, 3, beta, rng)
        else:
            xn = pick_rotation(cand.x, means, stds, refs, progress, 3, beta, rng, it)
        fn = np.array([prob.evaluate_both(r) for r in xn])
        x = np.vstack([x, xn])
        f = np.vstack([f, fn])
    nd = f[nondominated_mask(f)]
    return igd(front, nd)


for mode in ("norm", "rot"):
    vals = [run(mode, s) for s in (1, 2, 3)]
    print(mode, np.round(vals, 4), flush=True)
