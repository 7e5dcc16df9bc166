import time
import numpy as np
from hetmoo.problems import make_problem, HeterogeneousProblem
from hetmoo.sched import AlgorithmConfig, run_scheme

for scheme in ("tc", "nt"):
    vals = []
    for rep in range(3):
        prob = HeterogeneousProblem(make_problem("dtlz2"), 5)
        t0 = time.perf_counter()
        rec = run_scheme(scheme, prob, AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                                       n_train=100, seed=rep))
        el = time.perf_counter() - t0
        vals.append(rec.stats[-1].igd)
        print(f"dtlz2 {scheme} rep {rep}: igd {rec.stats[-1].igd:.4f}  {el:.0f}s",
              flush=True)
    print(f"dtlz2 {scheme} median {np.median(vals):.4f}", flush=True)
