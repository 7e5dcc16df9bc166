import time
import numpy as np
from hetmoo import problems, sched

spec = problems.make_problem("dtlz2")
prob = problems.HeterogeneousProblem(spec, 5)
for scheme in ("nt", "waiting", "tc"):
    cfg = sched.AlgorithmConfig(fe_s_max=200, n_train=100, u=3, seed=100)
    t0 = time.perf_counter()
    rec = sched.run_scheme(scheme, prob, cfg)
    trace = [f"{st.iteration}:{st.igd:.3f}" for st in rec.stats[::5]]
    print(f"{scheme}: final={rec.stats[-1].igd:.4f} wall={time.perf_counter()-t0:.0f}s",
          flush=True)
    print("  trace", " ".join(trace), flush=True)
    if scheme == "tc":
        mses = [f"{st.iteration}:{st.co_mse:.3f}" for st in rec.stats[1::5]]
        print("  co_mse", " ".join(mses), flush=True)
        f = rec.archive_f
        late = f[-30:]
        print("  late f rows min/median g-proxy:",
              np.round(np.sort(np.linalg.norm(late, axis=1))[:6], 3), flush=True)
