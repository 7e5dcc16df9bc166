import time
import numpy as np
import hetmoo.sched as S
from hetmoo import transfer
from hetmoo.problems import make_problem, HeterogeneousProblem
from hetmoo.sched import AlgorithmConfig, run_scheme


def joint_only(data, n_max, rng):
    return transfer.cap_training_set(data.x, data.y_fast, n_max, rng)


def maximin_fill(data, n_max, rng):
    jx, jy = transfer.cap_training_set(data.x, data.y_fast,
                                       n_max // 2 if len(data.x) > n_max // 2 else n_max,
                                       rng)
    room = n_max - len(jx)
    if room <= 0 or not len(data.x_extra):
        return jx, jy
    ex, ey = data.x_extra, data.y_extra
    chosen = []
    d = np.full(len(ex), np.inf)
    for row in jx:
        d = np.minimum(d, np.linalg.norm(ex - row, axis=1))
    for _ in range(min(room, len(ex))):
        i = int(np.argmax(d))
        if d[i] <= 0:
            break
        chosen.append(i)
        d = np.minimum(d, np.linalg.norm(ex - ex[i], axis=1))
    if chosen:
        jx = np.vstack([jx, ex[chosen]])
        jy = np.concatenate([jy, ey[chosen]])
    return jx, jy


for label, fn in (("joint", joint_only), ("maximin", maximin_fill)):
    S._fast_training_rows = fn
    for scheme in ("nt", "tc"):
        vals = []
        for rep in range(2):
            prob = HeterogeneousProblem(make_problem("dtlz2"), 5)
            t0 = time.perf_counter()
            rec = run_scheme(scheme, prob,
                             AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                             n_train=100, seed=rep))
            vals.append(rec.stats[-1].igd)
            print(f"{label} {scheme} rep {rep}: {rec.stats[-1].igd:.4f} "
                  f"{time.perf_counter() - t0:.0f}s", flush=True)
        print(f"{label} {scheme}: {np.round(vals, 4)}", flush=True)
