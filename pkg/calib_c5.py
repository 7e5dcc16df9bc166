import time
import numpy as np
from hetmoo import problems, sched

spec = problems.make_problem("dtlz2")
prob = problems.HeterogeneousProblem(spec, 5)
for seed in range(5):
    cfg = sched.AlgorithmConfig(fe_s_max=200, n_train=100, u=3, seed=100 + seed)
    t0 = time.perf_counter()
    rec = sched.run_scheme("tc", prob, cfg)
    st = rec.stats[-1]
    print(f"seed={100+seed} igd={st.igd:.4f} hv={st.hv:.4f} "
          f"iters={st.iteration} wall={time.perf_counter()-t0:.1f}s", flush=True)
