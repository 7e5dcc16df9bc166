"""Quality indicators and the rank-sum test used to compare schemes.

IGD averages, over a reference front sample, the Euclidean distance to the
nearest obtained point.  Hypervolume is the exact 2-d sweep.  The rank-sum
test enumerates assignments exactly for small samples and falls back to the
tie-corrected normal approximation with continuity correction otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.spatial.distance import cdist

MARKER_BETTER = "+"
MARKER_WORSE = "-"
MARKER_SIMILAR = "~"

# exact enumeration is used when both samples are at most this large
EXACT_LIMIT = 10


def igd(p_star: np.ndarray, p: np.ndarray) -> float:
    """Mean distance from each reference point to its nearest obtained point."""
    p_star = np.atleast_2d(np.asarray(p_star, dtype=float))
    p = np.atleast_2d(np.asarray(p, dtype=float))
    if p_star.size == 0 or p.size == 0:
        raise ValueError("igd needs nonempty point sets")
    if p_star.shape[1] != p.shape[1]:
        raise ValueError("point sets have different dimensions")
    return float(cdist(p_star, p).min(axis=1).mean())


def nondominated_mask(f: np.ndarray) -> np.ndarray:
    """Boolean mask of rows of a 2-column objective matrix not dominated by any other."""
    f = np.atleast_2d(np.asarray(f, dtype=float))
    if f.shape[1] != 2:
        raise ValueError("expected two objectives")
    n = f.shape[0]
    mask = np.zeros(n, dtype=bool)
    order = np.lexsort((f[:, 1], f[:, 0]))
    best_f2 = np.inf
    seen = set()
    for i in order:
        key = (f[i, 0], f[i, 1])
        if key in seen:
            continue
        if f[i, 1] < best_f2:
            mask[i] = True
            best_f2 = f[i, 1]
        seen.add(key)
    return mask


def hypervolume_2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact area dominated by ``points`` and bounded by ``ref`` (minimization)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ref = np.asarray(ref, dtype=float).ravel()
    if points.shape[1] != 2 or ref.shape != (2,):
        raise ValueError("hypervolume_2d expects 2-d points and a 2-d reference")
    inside = (points[:, 0] < ref[0]) & (points[:, 1] < ref[1])
    points = points[inside]
    if points.shape[0] == 0:
        return 0.0
    points = points[nondominated_mask(points)]
    order = np.argsort(points[:, 0], kind="stable")
    f1 = points[order, 0]
    f2 = points[order, 1]
    right = np.append(f1[1:], ref[0])
    return float(np.sum((right - f1) * (ref[1] - f2)))


def _midranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def wilcoxon_rank_sum(a, b, alpha: float = 0.05):
    """Two-sided rank-sum test; returns (p_value, marker).

    The marker reads from ``a``'s side under minimization: ``+`` when ``b`` is
    significantly worse (larger), ``-`` when ``a`` is, ``~`` otherwise.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if len(a) < 3 or len(b) < 3:
        raise ValueError("rank-sum test needs at least three values per sample")
    pooled = np.concatenate([a, b])
    if np.all(pooled == pooled[0]):
        return 1.0, MARKER_SIMILAR
    ranks = _midranks(pooled)
    n1, n2 = len(a), len(b)
    w = float(ranks[:n1].sum())
    expected = n1 * (n1 + n2 + 1) / 2.0

    if max(n1, n2) <= EXACT_LIMIT:
        total = 0
        at_most = 0
        at_least = 0
        eps = 1e-9
        for subset in combinations(range(n1 + n2), n1):
            s = ranks[list(subset)].sum()
            total += 1
            if s <= w + eps:
                at_most += 1
            if s >= w - eps:
                at_least += 1
        p = min(1.0, 2.0 * min(at_most, at_least) / total)
    else:
        n = n1 + n2
        _, counts = np.unique(pooled, return_counts=True)
        tie_term = float(((counts**3 - counts).sum()) / (n * (n - 1)))
        var = n1 * n2 / 12.0 * ((n + 1) - tie_term)
        if var <= 0:
            return 1.0, MARKER_SIMILAR
        z = (abs(w - expected) - 0.5) / math.sqrt(var)
        p = min(1.0, math.erfc(z / math.sqrt(2.0)))

    if p < alpha:
        marker = MARKER_BETTER if w < expected else MARKER_WORSE
    else:
        marker = MARKER_SIMILAR
    return p, marker


@dataclass
class MetricReport:
    """Aggregate of one indicator over the replicates of a run cell."""

    per_run: np.ndarray
    mean: float
    std: float
    median: float
    marker: str = ""

    @classmethod
    def from_runs(cls, values, reference=None, alpha: float = 0.05) -> "MetricReport":
        values = np.asarray(values, dtype=float).ravel()
        marker = ""
        if reference is not None:
            reference = np.asarray(reference, dtype=float).ravel()
            _, marker = wilcoxon_rank_sum(reference, values, alpha=alpha)
        return cls(
            per_run=values,
            mean=float(values.mean()),
            std=float(values.std()),
            median=float(np.median(values)),
            marker=marker,
        )
