import time
import numpy as np
from hetmoo.problems import make_problem, HeterogeneousProblem
from hetmoo.sched import AlgorithmConfig, run_scheme


def run(problem_name, scheme, reps):
    vals = []
    for rep in range(reps):
        prob = HeterogeneousProblem(make_problem(problem_name), 5)
        t0 = time.perf_counter()
        rec = run_scheme(scheme, prob, AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                                       n_train=100, seed=rep))
        el = time.perf_counter() - t0
        vals.append(rec.stats[-1].igd)
        print(f"  {problem_name} {scheme} rep {rep}: igd {vals[-1]:.4f}  {el:.0f}s",
              flush=True)
    print(f"  {problem_name} {scheme}: {np.round(vals, 4)} median {np.median(vals):.4f}",
          flush=True)
    return np.median(vals)


print("criterion 5: dtlz2 tc x5", flush=True)
m5 = run("dtlz2", "tc", 5)
print(f"C5 median {m5:.4f}  target <= 0.10  {'PASS' if m5 <= 0.10 else 'FAIL'}",
      flush=True)

print("criterion 6: dtlz1a tc/ns/waiting x5", flush=True)
mt = run("dtlz1a", "tc", 5)
mn = run("dtlz1a", "ns", 5)
mw = run("dtlz1a", "waiting", 5)
print(f"C6 tc {mt:.4f} ns {mn:.4f} waiting {mw:.4f}; "
      f"tc<=ns {'PASS' if mt <= mn else 'FAIL'}; "
      f"tc<=0.25*waiting ({0.25*mw:.4f}) {'PASS' if mt <= 0.25 * mw else 'FAIL'}",
      flush=True)

print("criterion 7: cm-onemax corr=1 tc x3", flush=True)
vals = []
for rep in range(3):
    prob = HeterogeneousProblem(make_problem("cm-onemax", corr=1.0), 5)
    t0 = time.perf_counter()
    rec = run_scheme("tc", prob, AlgorithmConfig(fe_s_max=200, tau=5, u=3,
                                                 n_train=100, seed=rep))
    el = time.perf_counter() - t0
    vals.append(rec.stats[-1].igd)
    print(f"  cm-onemax tc rep {rep}: igd {vals[-1]:.4f}  {el:.0f}s", flush=True)
m7 = np.median(vals)
print(f"C7 median {m7:.4f}  target <= 0.05  {'PASS' if m7 <= 0.05 else 'FAIL'}",
      flush=True)
