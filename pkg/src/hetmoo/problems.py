"""Bi-objective benchmark problems and their reference fronts.

All problems minimize two objectives.  The DTLZ family is instantiated for two
objectives (one position variable, ``k`` distance variables); the "a" variants
soften the multimodal g-function by dropping its cosine frequency to 2*pi.
The UF family follows the CEC-2009 unconstrained definitions with n = 30.
cm-OneMax is a continuous OneMax pair whose conflict is set by a correlation
parameter in [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .metrics import nondominated_mask

FRONT_SAMPLES_DEFAULT = 500


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    n: int
    lo: tuple
    hi: tuple
    k: int = 0
    m: int = 2

    @property
    def bounds(self):
        return np.asarray(self.lo, dtype=float), np.asarray(self.hi, dtype=float)


@dataclass(frozen=True)
class CmOneMaxSpec:
    name: str
    n: int
    corr: float
    bitmap: tuple
    seed: int | None = None
    m: int = 2

    @property
    def lo(self):
        return (0.0,) * self.n

    @property
    def hi(self):
        return (1.0,) * self.n

    @property
    def bounds(self):
        return np.zeros(self.n), np.ones(self.n)


def make_cm_onemax(n: int, corr: float, rng=None, seed: int | None = None) -> CmOneMaxSpec:
    """Draw a cm-OneMax instance; each map bit is 0 with probability (1+corr)/2."""
    if not -1.0 <= corr <= 1.0:
        raise ValueError("corr must lie in [-1, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    if rng is None:
        rng = np.random.default_rng(0 if seed is None else seed)
    elif isinstance(rng, (int, np.integer)):
        seed = int(rng)
        rng = np.random.default_rng(seed)
    bits = np.where(rng.random(n) < (1.0 + corr) / 2.0, 0.0, 1.0)
    return CmOneMaxSpec(name="cm-onemax", n=n, corr=corr, bitmap=tuple(bits), seed=seed)


# DTLZ distance-variable counts; n = k + 1 for two objectives.
_DTLZ_K = {
    "dtlz1": 5, "dtlz1a": 5,
    "dtlz2": 10, "dtlz3": 10, "dtlz3a": 10, "dtlz4": 10,
    "dtlz5": 10, "dtlz6": 10,
    "dtlz7": 20,
}

_UF_NAMES = tuple(f"uf{i}" for i in range(1, 8))

PROBLEM_NAMES = tuple(sorted(_DTLZ_K)) + _UF_NAMES + ("cm-onemax",)


def make_problem(name: str, n: int | None = None, **params):
    """Build a problem spec from its registry name.

    cm-OneMax takes ``corr`` (required) and ``seed``; the others take only an
    optional ``n`` override.
    """
    name = name.lower()
    if name == "cm-onemax":
        corr = params.pop("corr", None)
        seed = params.pop("seed", None)
        if params:
            raise ValueError(f"unknown problem parameters: {sorted(params)}")
        if corr is None:
            raise ValueError("cm-onemax requires a corr parameter")
        return make_cm_onemax(10 if n is None else n, float(corr),
                              seed=0 if seed is None else int(seed))
    if params:
        raise ValueError(f"unknown problem parameters: {sorted(params)}")
    if name in _DTLZ_K:
        k = _DTLZ_K[name]
        n = k + 1 if n is None else n
        if n < 2:
            raise ValueError("dtlz needs n >= 2")
        k = n - 1
        return ProblemSpec(name=name, n=n, lo=(0.0,) * n, hi=(1.0,) * n, k=k)
    if name in _UF_NAMES:
        n = 30 if n is None else n
        if n < 3:
            raise ValueError("uf needs n >= 3")
        if name == "uf3":
            lo, hi = (0.0,) * n, (1.0,) * n
        elif name == "uf4":
            lo = (0.0,) + (-2.0,) * (n - 1)
            hi = (1.0,) + (2.0,) * (n - 1)
        else:
            lo = (0.0,) + (-1.0,) * (n - 1)
            hi = (1.0,) + (1.0,) * (n - 1)
        return ProblemSpec(name=name, n=n, lo=lo, hi=hi)
    raise ValueError(f"unknown problem: {name!r}")


def _g_rugged(xd: np.ndarray, k: int, freq: float) -> float:
    return 100.0 * (k + float(np.sum((xd - 0.5) ** 2 - np.cos(freq * (xd - 0.5)))))


def _check_point(spec, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != spec.n:
        raise ValueError(f"{spec.name} expects {spec.n} variables, got {x.shape[0]}")
    lo, hi = spec.bounds
    if np.any(x < lo - 1e-12) or np.any(x > hi + 1e-12):
        raise ValueError(f"point outside the bounds of {spec.name}")
    return x


def evaluate(spec, x) -> np.ndarray:
    """Both objective values at ``x`` (pure; no randomness, no caching)."""
    x = _check_point(spec, x)
    if isinstance(spec, CmOneMaxSpec):
        f1 = float(np.sum(x))
        f2 = float(np.sum(np.abs(x - np.asarray(spec.bitmap))))
        return np.array([f1, f2])
    name = spec.name
    if name.startswith("dtlz"):
        return _evaluate_dtlz(name, x, spec.k)
    return _evaluate_uf(name, x)


def _evaluate_dtlz(name: str, x: np.ndarray, k: int) -> np.ndarray:
    x1, xd = x[0], x[1:]
    if name == "dtlz1":
        g = _g_rugged(xd, k, 20.0 * np.pi)
        return np.array([0.5 * x1 * (1 + g), 0.5 * (1 - x1) * (1 + g)])
    if name == "dtlz1a":
        g = _g_rugged(xd, k, 2.0 * np.pi)
        return np.array([0.5 * x1 * (1 + g), 0.5 * (1 - x1) * (1 + g)])
    if name == "dtlz7":
        g = 1.0 + 9.0 * float(xd.mean())
        f1 = x1
        h = 2.0 - f1 / (1.0 + g) * (1.0 + np.sin(3.0 * np.pi * f1))
        return np.array([f1, (1.0 + g) * h])
    if name == "dtlz2" or name == "dtlz5":
        g = float(np.sum((xd - 0.5) ** 2))
    elif name == "dtlz3":
        g = _g_rugged(xd, k, 20.0 * np.pi)
    elif name == "dtlz3a":
        g = _g_rugged(xd, k, 2.0 * np.pi)
    elif name == "dtlz4":
        g = float(np.sum((xd - 0.5) ** 2))
        x1 = x1 ** 100
    elif name == "dtlz6":
        g = float(np.sum(xd ** 0.1))
    else:
        raise ValueError(f"unknown problem: {name!r}")
    angle = 0.5 * np.pi * x1
    return np.array([(1 + g) * np.cos(angle), (1 + g) * np.sin(angle)])


def _evaluate_uf(name: str, x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    j = np.arange(2, n + 1)            # 1-based variable indices from 2 on
    odd = j % 2 == 1                   # J1: odd indices share f1
    x1 = x[0]
    xr = x[1:]
    if name == "uf1":
        y = xr - np.sin(6 * np.pi * x1 + j * np.pi / n)
        s1 = 2.0 * np.mean(y[odd] ** 2)
        s2 = 2.0 * np.mean(y[~odd] ** 2)
        return np.array([x1 + s1, 1 - np.sqrt(x1) + s2])
    if name == "uf2":
        base = 6 * np.pi * x1 + j * np.pi / n
        amp = 0.3 * x1**2 * np.cos(24 * np.pi * x1 + 4 * j * np.pi / n) + 0.6 * x1
        y = np.where(odd, xr - amp * np.cos(base), xr - amp * np.sin(base))
        s1 = 2.0 * np.mean(y[odd] ** 2)
        s2 = 2.0 * np.mean(y[~odd] ** 2)
        return np.array([x1 + s1, 1 - np.sqrt(x1) + s2])
    if name == "uf3":
        expo = 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0))
        y = xr - x1**expo
        c = np.cos(20.0 * y * np.pi / np.sqrt(j))
        s1 = 2.0 / odd.sum() * (4.0 * np.sum(y[odd] ** 2) - 2.0 * np.prod(c[odd]) + 2.0)
        s2 = 2.0 / (~odd).sum() * (4.0 * np.sum(y[~odd] ** 2) - 2.0 * np.prod(c[~odd]) + 2.0)
        return np.array([x1 + s1, 1 - np.sqrt(x1) + s2])
    if name == "uf4":
        y = xr - np.sin(6 * np.pi * x1 + j * np.pi / n)
        h = np.abs(y) / (1.0 + np.exp(2.0 * np.abs(y)))
        s1 = 2.0 * np.mean(h[odd])
        s2 = 2.0 * np.mean(h[~odd])
        return np.array([x1 + s1, 1 - x1**2 + s2])
    if name == "uf5":
        big_n, eps = 10.0, 0.1
        y = xr - np.sin(6 * np.pi * x1 + j * np.pi / n)
        h = 2.0 * y**2 - np.cos(4.0 * np.pi * y) + 1.0
        bump = (1.0 / (2.0 * big_n) + eps) * abs(np.sin(2.0 * big_n * np.pi * x1))
        s1 = 2.0 * np.mean(h[odd])
        s2 = 2.0 * np.mean(h[~odd])
        return np.array([x1 + bump + s1, 1 - x1 + bump + s2])
    if name == "uf6":
        big_n, eps = 2.0, 0.1
        y = xr - np.sin(6 * np.pi * x1 + j * np.pi / n)
        c = np.cos(20.0 * y * np.pi / np.sqrt(j))
        bump = max(0.0, 2.0 * (1.0 / (2.0 * big_n) + eps) * np.sin(2.0 * big_n * np.pi * x1))
        s1 = 2.0 / odd.sum() * (4.0 * np.sum(y[odd] ** 2) - 2.0 * np.prod(c[odd]) + 2.0)
        s2 = 2.0 / (~odd).sum() * (4.0 * np.sum(y[~odd] ** 2) - 2.0 * np.prod(c[~odd]) + 2.0)
        return np.array([x1 + bump + s1, 1 - x1 + bump + s2])
    if name == "uf7":
        y = xr - np.sin(6 * np.pi * x1 + j * np.pi / n)
        root = x1 ** 0.2
        s1 = 2.0 * np.mean(y[odd] ** 2)
        s2 = 2.0 * np.mean(y[~odd] ** 2)
        return np.array([root + s1, 1 - root + s2])
    raise ValueError(f"unknown problem: {name!r}")


def _front_curve(f1: np.ndarray, f2: np.ndarray, count: int) -> np.ndarray:
    """Reduce a dense candidate curve to ``count`` nondominated samples."""
    pts = np.column_stack([f1, f2])
    pts = pts[nondominated_mask(pts)]
    pts = pts[np.argsort(pts[:, 0], kind="stable")]
    if pts.shape[0] <= count:
        return pts
    idx = np.unique(np.round(np.linspace(0, pts.shape[0] - 1, count)).astype(int))
    return pts[idx]


def _cm_onemax_front(spec: CmOneMaxSpec, levels: int = 21) -> np.ndarray:
    """Per-dimension grid enumeration folded with dominance pruning.

    Equivalent to enumerating the full levels**n grid and keeping the
    nondominated image: pruning dominated partial sums is safe because
    dominance is preserved under adding a common remainder.
    """
    grid = np.linspace(0.0, 1.0, levels)
    partial = np.zeros((1, 2))
    for bit in spec.bitmap:
        contrib = np.column_stack([grid, np.abs(grid - bit)])
        summed = (partial[:, None, :] + contrib[None, :, :]).reshape(-1, 2)
        summed = np.unique(summed, axis=0)
        partial = summed[nondominated_mask(summed)]
    return partial[np.argsort(partial[:, 0], kind="stable")]


@lru_cache(maxsize=64)
def _front_cached(spec, count: int) -> tuple:
    if isinstance(spec, CmOneMaxSpec):
        pts = _cm_onemax_front(spec)
        return tuple(map(tuple, pts))
    name = spec.name
    if name in ("dtlz1", "dtlz1a"):
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([0.5 * t, 0.5 * (1.0 - t)])
    elif name in ("dtlz2", "dtlz3", "dtlz3a", "dtlz4", "dtlz5", "dtlz6"):
        t = np.linspace(0.0, 0.5 * np.pi, count)
        pts = np.column_stack([np.cos(t), np.sin(t)])
    elif name == "dtlz7":
        t = np.linspace(0.0, 1.0, max(4 * count, 2001))
        pts = _front_curve(t, 4.0 - t * (1.0 + np.sin(3.0 * np.pi * t)), count)
    elif name in ("uf1", "uf2", "uf3"):
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([t, 1.0 - np.sqrt(t)])
    elif name == "uf4":
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([t, 1.0 - t**2])
    elif name == "uf5":
        t = np.arange(21) / 20.0
        pts = np.column_stack([t, 1.0 - t])
    elif name == "uf6":
        half = max((count - 1) // 2, 2)
        seg1 = np.linspace(0.25, 0.5, half)
        seg2 = np.linspace(0.75, 1.0, half)
        t = np.concatenate([[0.0], seg1, seg2])
        pts = np.column_stack([t, 1.0 - t])
    elif name == "uf7":
        t = np.linspace(0.0, 1.0, count)
        pts = np.column_stack([t, 1.0 - t])
    else:
        raise ValueError(f"unknown problem: {name!r}")
    return tuple(map(tuple, pts))


def pareto_front_samples(spec, count: int = FRONT_SAMPLES_DEFAULT) -> np.ndarray:
    """Reference samples on the true Pareto front.

    Discrete or enumerated fronts (uf5, cm-onemax) return their full point
    set regardless of ``count``.
    """
    if count < 2:
        raise ValueError("count must be at least 2")
    return np.asarray(_front_cached(spec, count), dtype=float)


@dataclass(frozen=True)
class HeterogeneousProblem:
    """A problem whose second objective is slower to evaluate by a factor tau."""

    spec: ProblemSpec | CmOneMaxSpec
    tau: int
    slow_index: int = 2        # 1-based objective position; only 2 is supported

    def __post_init__(self):
        if not isinstance(self.tau, (int, np.integer)) or self.tau < 2:
            raise ValueError("tau must be an integer >= 2")
        if self.slow_index != 2:
            raise ValueError("only the second objective may be slow")

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def bounds(self):
        return self.spec.bounds

    def evaluate_both(self, x) -> np.ndarray:
        return evaluate(self.spec, x)

    def evaluate_fast(self, x) -> float:
        return float(evaluate(self.spec, x)[0])

    def evaluate_slow(self, x) -> float:
        return float(evaluate(self.spec, x)[1])
