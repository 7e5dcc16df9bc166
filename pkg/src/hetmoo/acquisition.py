"""Infill scoring and selection.

Candidates are scored per objective with a lower-confidence bound whose
exploration weight decays linearly over the slow-evaluation budget, then the
scored bi-objective matrix is handed to APD selection to pick a small batch.
Extra fast-only samples are drawn around each chosen point to soak up the
cheap budget surplus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evo import ReferenceVectorSet, apd_values, lhs_sample

LOCAL_BOX_RADIUS = 0.05     # fraction of the variable range around each infill point
DUPLICATE_TOL = 1e-12


def _beta_linear(progress: float, beta_max: float, beta_min: float) -> float:
    t = min(max(progress, 0.0), 1.0)
    return beta_max * (1.0 - t) + beta_min * t


_SCHEDULES = {"linear": _beta_linear}


@dataclass(frozen=True)
class AcquisitionConfig:
    beta_max: float = 3.0
    beta_min: float = 0.5
    schedule: str = "linear"

    def beta(self, progress: float) -> float:
        try:
            rule = _SCHEDULES[self.schedule]
        except KeyError:
            raise ValueError(f"unknown acquisition schedule: {self.schedule!r}")
        return rule(progress, self.beta_max, self.beta_min)


def aaf_score(mean, std, progress: float, cfg: AcquisitionConfig | None = None):
    """Lower-confidence-bound score ``mean - beta(progress) * std`` (elementwise)."""
    cfg = cfg or AcquisitionConfig()
    mean = np.asarray(mean, dtype=float)
    std = np.asarray(std, dtype=float)
    if np.any(std < 0):
        raise ValueError("std must be nonnegative")
    return mean - cfg.beta(progress) * std


def _mutation_step(x: np.ndarray, bounds, rng, eta: float = 20.0) -> np.ndarray:
    lo, hi = np.asarray(bounds[0], float), np.asarray(bounds[1], float)
    r = rng.random(x.shape)
    exp = 1.0 / (eta + 1.0)
    delta = np.where(r < 0.5, (2 * r) ** exp - 1.0, 1.0 - (2 * (1 - r)) ** exp)
    return np.clip(x + delta * (hi - lo), lo, hi)


def select_infill(candidates_x, means, stds, refs: ReferenceVectorSet,
                  progress: float, u: int, cfg: AcquisitionConfig | None = None,
                  alpha: float = 2.0, existing=None, bounds=None, rng=None,
                  iteration: int = 0):
    """Pick ``u`` distinct infill points from the candidate pool.

    Each reference vector contributes its APD winner on the scored matrix,
    and the batch keeps the first ``u`` winners in an order that rotates
    with ``iteration``, so consecutive batches walk along the front instead
    of revisiting the same region; any shortfall is topped up by smallest
    APD.  Points duplicating each other or ``existing`` rows (within 1e-12)
    are nudged with one polynomial-mutation step.  Returns
    (points, short_flag); the flag is set when fewer than ``u`` candidates
    were available.
    """
    cfg = cfg or AcquisitionConfig()
    x = np.atleast_2d(np.asarray(candidates_x, dtype=float))
    scores = aaf_score(np.atleast_2d(means), np.atleast_2d(stds), progress, cfg)
    if u < 1:
        raise ValueError("u must be positive")

    short = u > len(x)
    translated = scores - scores.min(axis=0)
    assign, apd = apd_values(translated, refs, progress, alpha)
    winners: dict[int, int] = {}
    for v in range(len(refs)):
        members = np.flatnonzero(assign == v)
        if members.size:
            winners[v] = int(members[np.argmin(apd[members])])
    order = [(iteration * u + j) % len(refs) for j in range(len(refs))]
    chosen = [winners[v] for v in order if v in winners][:u]
    if len(chosen) < u:
        rest = [i for i in np.argsort(apd, kind="stable") if i not in set(chosen)]
        chosen.extend(int(i) for i in rest[:u - len(chosen)])

    picked = x[chosen].copy()
    if rng is not None and bounds is not None:
        taken = [] if existing is None else [np.asarray(existing, dtype=float)]
        for i in range(len(picked)):
            others = taken + ([picked[:i]] if i else [])
            pool = np.vstack(others) if others else None
            for _ in range(16):
                if pool is None or not np.any(
                        np.all(np.abs(pool - picked[i]) <= DUPLICATE_TOL, axis=1)):
                    break
                picked[i] = _mutation_step(picked[i], bounds, rng)
    return picked, short


def sample_additional(x_new: np.ndarray, u: int, tau: int, bounds, rng) -> np.ndarray:
    """tau-1 fast-only points LHS-sampled in a small box around each infill point."""
    x_new = np.atleast_2d(np.asarray(x_new, dtype=float))
    if tau < 2:
        raise ValueError("tau must be at least 2")
    if len(x_new) != u:
        raise ValueError("x_new row count does not match u")
    lo, hi = np.asarray(bounds[0], float), np.asarray(bounds[1], float)
    radius = LOCAL_BOX_RADIUS * (hi - lo)
    batches = []
    for center in x_new:
        pts = lhs_sample(tau - 1, (center - radius, center + radius), rng)
        batches.append(np.clip(pts, lo, hi))
    return np.vstack(batches)
