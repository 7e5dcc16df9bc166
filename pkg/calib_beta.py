import time
import numpy as np
from hetmoo.acquisition import AcquisitionConfig
from hetmoo.problems import make_problem, HeterogeneousProblem
from hetmoo.sched import AlgorithmConfig, run_scheme
from hetmoo import transfer as T

ORIG_CAP = T.cap_training_set


def uniform_dc_cap():
    """Every third in-loop cap call is the difference set; cap it uniformly."""
    state = {"i": 0}

    def wrapper(x, y, n_max, rng):
        state["i"] += 1
        if state["i"] % 3 == 0 and len(x) > n_max:
            keep = rng.choice(len(x), size=n_max, replace=False)
            return np.asarray(x)[keep], np.asarray(y)[keep]
        return ORIG_CAP(x, y, n_max, rng)

    return wrapper


def trial(label, beta_max, beta_min, dc_uniform=False):
    T.cap_training_set = uniform_dc_cap() if dc_uniform else ORIG_CAP
    import hetmoo.sched as S
    S.transfer.cap_training_set = T.cap_training_set
    vals = []
    for rep in range(5):
        prob = HeterogeneousProblem(make_problem("dtlz2"), 5)
        t0 = time.perf_counter()
        cfg = AlgorithmConfig(fe_s_max=200, tau=5, u=3, n_train=100, seed=rep,
                              acquisition=AcquisitionConfig(beta_max=beta_max,
                                                            beta_min=beta_min))
        rec = run_scheme("tc", prob, cfg)
        vals.append(rec.stats[-1].igd)
        print(f"  {label} rep {rep}: igd {vals[-1]:.4f}  "
              f"{time.perf_counter() - t0:.0f}s", flush=True)
    print(f"{label}: {np.round(vals, 4)} median {np.median(vals):.4f}", flush=True)


trial("beta 2.0->0.0", 2.0, 0.0)
trial("beta 1.0->0.0", 1.0, 0.0)
trial("beta 0.5->0.0", 0.5, 0.0)
trial("dc-uniform beta 3.0->0.5", 3.0, 0.5, dc_uniform=True)
