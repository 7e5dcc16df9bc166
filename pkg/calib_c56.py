import time
import numpy as np
from hetmoo.problems import make_problem, HeterogeneousProblem
from hetmoo.sched import AlgorithmConfig, run_scheme

cfg = AlgorithmConfig(fe_s_max=200, tau=5, u=3, n_train=100)

print("criterion 5: dtlz2 tc x5", flush=True)
vals = []
for rep in range(5):
    prob = HeterogeneousProblem(make_problem("dtlz2"), 5)
    t0 = time.perf_counter()
    rec = run_scheme("tc", prob, AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                                 n_train=100, seed=rep))
    el = time.perf_counter() - t0
    vals.append(rec.stats[-1].igd)
    print(f"  rep {rep}: igd {rec.stats[-1].igd:.4f}  {el:.0f}s", flush=True)
print("  median", np.median(vals), flush=True)

print("criterion 6 preview: dtlz1a tc/ns/waiting x3", flush=True)
for scheme in ("tc", "ns", "waiting"):
    vals = []
    for rep in range(3):
        prob = HeterogeneousProblem(make_problem("dtlz1a"), 5)
        rec = run_scheme(scheme, prob, AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                                       n_train=100, seed=rep))
        vals.append(rec.stats[-1].igd)
    print(f"  {scheme}: {np.round(vals, 4)} median {np.median(vals):.4f}", flush=True)
