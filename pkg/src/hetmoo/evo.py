"""Evolutionary operators shared by the optimizers.

Holds Latin hypercube sampling, SBX + polynomial-mutation variation, the
reference-vector machinery with angle-penalized-distance (APD) selection, a
reference-vector EA that runs on surrogate means, and a single-objective GA
used wherever only the fast objective is optimized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gp


@dataclass
class Population:
    """Decision vectors with optional attached objective values."""

    x: np.ndarray
    f: np.ndarray | None = None

    def __post_init__(self):
        self.x = np.atleast_2d(np.asarray(self.x, dtype=float))
        if self.f is not None:
            self.f = np.atleast_2d(np.asarray(self.f, dtype=float))
            if self.f.shape[0] != self.x.shape[0]:
                raise ValueError("objective rows do not match individuals")

    def __len__(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class VariationConfig:
    sbx_eta: float = 20.0
    sbx_prob: float = 1.0
    pm_eta: float = 20.0
    pm_prob: float | None = None   # None means 1/n_variables


@dataclass(frozen=True)
class EvoConfig:
    inner_pop: int = 50
    ref_divisions: int = 9
    apd_alpha: float = 2.0
    soea_pop: int = 30
    tournament_size: int = 2
    variation: VariationConfig = field(default_factory=VariationConfig)


@dataclass(frozen=True)
class ReferenceVectorSet:
    vectors: np.ndarray   # unit rows
    gamma: np.ndarray     # angle to the nearest other vector

    def __len__(self) -> int:
        return self.vectors.shape[0]


def lhs_sample(count: int, bounds, rng) -> np.ndarray:
    """Latin hypercube sample: one point per stratum in every dimension."""
    lo = np.asarray(bounds[0], dtype=float)
    hi = np.asarray(bounds[1], dtype=float)
    if count < 1:
        raise ValueError("count must be positive")
    if lo.shape != hi.shape or np.any(hi < lo):
        raise ValueError("invalid bounds")
    d = lo.shape[0]
    u = np.empty((count, d))
    for jdim in range(d):
        u[:, jdim] = (rng.permutation(count) + rng.random(count)) / count
    return lo + u * (hi - lo)


def variation(parents: np.ndarray, bounds, cfg: VariationConfig, rng) -> np.ndarray:
    """SBX on consecutive pairs followed by polynomial mutation, clipped to bounds.

    Returns exactly one offspring per parent, in parent order; with crossover
    and mutation probabilities both zero the parents come back unchanged.
    """
    lo = np.asarray(bounds[0], dtype=float)
    hi = np.asarray(bounds[1], dtype=float)
    parents = np.atleast_2d(np.asarray(parents, dtype=float))
    n, d = parents.shape
    off = parents.copy()

    n_pairs = n // 2
    if n_pairs > 0 and cfg.sbx_prob > 0:
        p1 = off[0:2 * n_pairs:2]
        p2 = off[1:2 * n_pairs:2]
        cross = rng.random(n_pairs) < cfg.sbx_prob
        u = rng.random((n_pairs, d))
        beta = np.where(u <= 0.5,
                        (2.0 * u) ** (1.0 / (cfg.sbx_eta + 1.0)),
                        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (cfg.sbx_eta + 1.0)))
        c1 = 0.5 * ((1 + beta) * p1 + (1 - beta) * p2)
        c2 = 0.5 * ((1 - beta) * p1 + (1 + beta) * p2)
        p1[cross] = c1[cross]
        p2[cross] = c2[cross]

    pm_prob = cfg.pm_prob if cfg.pm_prob is not None else 1.0 / d
    if pm_prob > 0:
        span = hi - lo
        mutate = rng.random((n, d)) < pm_prob
        r = rng.random((n, d))
        exp = 1.0 / (cfg.pm_eta + 1.0)
        delta = np.where(r < 0.5,
                         (2.0 * r) ** exp - 1.0,
                         1.0 - (2.0 * (1.0 - r)) ** exp)
        off = np.where(mutate, off + delta * span, off)

    return np.clip(off, lo, hi)


def reference_vectors(h: int) -> ReferenceVectorSet:
    """h+1 unit vectors from the uniform 2-objective weight lattice (i/h, 1-i/h)."""
    if h < 1:
        raise ValueError("h must be at least 1")
    i = np.arange(h + 1, dtype=float)
    w = np.column_stack([i / h, 1.0 - i / h])
    v = w / np.linalg.norm(w, axis=1, keepdims=True)
    cosine = np.clip(v @ v.T, -1.0, 1.0)
    np.fill_diagonal(cosine, -1.0)
    gamma = np.arccos(cosine.max(axis=1))
    return ReferenceVectorSet(vectors=v, gamma=gamma)


def apd_values(translated: np.ndarray, refs: ReferenceVectorSet,
               progress: float, alpha: float = 2.0):
    """Vector assignment and APD of each already-translated objective row."""
    translated = np.atleast_2d(np.asarray(translated, dtype=float))
    norms = np.linalg.norm(translated, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    cosine = np.clip((translated @ refs.vectors.T) / safe[:, None], -1.0, 1.0)
    assign = cosine.argmax(axis=1)
    theta = np.arccos(cosine[np.arange(len(assign)), assign])
    theta = np.where(norms > 0, theta, 0.0)
    progress = min(max(progress, 0.0), 1.0)
    m = translated.shape[1]
    penalty = 1.0 + m * (progress ** alpha) * theta / refs.gamma[assign]
    return assign, penalty * norms


def apd_select(translated: np.ndarray, refs: ReferenceVectorSet,
               progress: float, alpha: float = 2.0) -> np.ndarray:
    """Indices of the best row per reference vector (at most one per vector)."""
    assign, apd = apd_values(translated, refs, progress, alpha)
    selected = []
    for v in range(len(refs)):
        members = np.flatnonzero(assign == v)
        if members.size:
            selected.append(members[np.argmin(apd[members])])
    return np.asarray(selected, dtype=int)


def surrogate_rvea(models, init: Population, w_max: int, cfg: EvoConfig,
                   rng, bounds) -> Population:
    """Reference-vector EA over the surrogate posterior means.

    Never touches true objectives.  Returns the APD-selected elite of the
    final generation with its surrogate objective values attached.
    """
    refs = reference_vectors(cfg.ref_divisions)

    def predicted(x):
        cols = [gp.predict_many(m, x)[0] for m in models]
        return np.column_stack(cols)

    pop_x = init.x
    pop_f = init.f if init.f is not None else predicted(pop_x)
    if w_max == 0:
        return Population(pop_x.copy(), pop_f.copy())
    for w in range(1, w_max + 1):
        mating = pop_x[rng.integers(0, len(pop_x), size=cfg.inner_pop)]
        off_x = variation(mating, bounds, cfg.variation, rng)
        off_f = predicted(off_x)
        comb_x = np.vstack([pop_x, off_x])
        comb_f = np.vstack([pop_f, off_f])
        translated = comb_f - comb_f.min(axis=0)
        keep = apd_select(translated, refs, w / w_max, cfg.apd_alpha)
        pop_x, pop_f = comb_x[keep], comb_f[keep]
    return Population(pop_x, pop_f)


def soea_optimize(objective, budget: int, bounds, cfg: EvoConfig, rng,
                  seeds: tuple | None = None, popsize: int | None = None):
    """Generational GA on one objective spending exactly ``budget`` evaluations.

    ``seeds`` may carry already-evaluated (x, y) pairs used to build the
    initial population without charging the budget.  Returns the arrays of
    every point this call evaluated.
    """
    popsize = cfg.soea_pop if popsize is None else popsize
    if budget < 1:
        raise ValueError("budget must be positive")
    all_x, all_y = [], []
    spent = 0

    if seeds is not None and len(seeds[0]) > 0:
        seed_x = np.atleast_2d(np.asarray(seeds[0], dtype=float))
        seed_y = np.asarray(seeds[1], dtype=float).ravel()
        order = np.argsort(seed_y, kind="stable")[:popsize]
        pop_x = seed_x[order]
        pop_y = seed_y[order]
        fill = popsize - len(pop_x)
        if fill > 0:
            extra = lhs_sample(min(fill, budget), bounds, rng)
            extra_y = np.array([objective(p) for p in extra])
            spent += len(extra)
            all_x.append(extra)
            all_y.append(extra_y)
            pop_x = np.vstack([pop_x, extra])
            pop_y = np.concatenate([pop_y, extra_y])
    else:
        if budget < popsize:
            raise ValueError("budget smaller than the population size")
        pop_x = lhs_sample(popsize, bounds, rng)
        pop_y = np.array([objective(p) for p in pop_x])
        spent = popsize
        all_x.append(pop_x.copy())
        all_y.append(pop_y.copy())

    while spent < budget:
        k = min(popsize, budget - spent)
        a = rng.integers(0, len(pop_x), size=k)
        b = rng.integers(0, len(pop_x), size=k)
        winners = np.where(pop_y[a] <= pop_y[b], a, b)
        off_x = variation(pop_x[winners], bounds, cfg.variation, rng)[:k]
        off_y = np.array([objective(p) for p in off_x])
        spent += k
        all_x.append(off_x)
        all_y.append(off_y)
        merged_x = np.vstack([pop_x, off_x])
        merged_y = np.concatenate([pop_y, off_y])
        keep = np.argsort(merged_y, kind="stable")[:popsize]
        pop_x, pop_y = merged_x[keep], merged_y[keep]

    return np.vstack(all_x), np.concatenate(all_y)
