"""Cross-objective transfer through a difference ("co") surrogate.

The co-surrogate models the gap between the slow and fast objective on the
jointly evaluated rows.  Its predictions turn fast-only evaluations into
synthetic slow labels; a one-standard-deviation interval around the slow
surrogate's own prediction decides which synthetic rows are trustworthy
enough to train on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gp
from .errors import InternalConsistencyError


def build_difference_set(y_slow, y_fast) -> np.ndarray:
    """Per-row difference labels (slow minus fast) for the co-surrogate."""
    y_slow = np.asarray(y_slow, dtype=float).ravel()
    y_fast = np.asarray(y_fast, dtype=float).ravel()
    if y_slow.shape != y_fast.shape:
        raise ValueError("slow and fast label vectors must pair up row by row")
    return y_slow - y_fast


@dataclass
class TrainingSets:
    """All evaluated data a run accumulates, split by what is known per row."""

    x: np.ndarray                       # rows with both objectives
    y_slow: np.ndarray
    y_fast: np.ndarray
    x_extra: np.ndarray = None          # fast-only rows
    y_extra: np.ndarray = None
    x_transfer: np.ndarray = None       # current synthetic slow rows
    y_transfer: np.ndarray = None

    def __post_init__(self):
        self.x = np.atleast_2d(np.asarray(self.x, dtype=float))
        self.y_slow = np.asarray(self.y_slow, dtype=float).ravel()
        self.y_fast = np.asarray(self.y_fast, dtype=float).ravel()
        if not (len(self.x) == len(self.y_slow) == len(self.y_fast)):
            raise ValueError("paired arrays disagree on row count")
        d = self.x.shape[1]
        if self.x_extra is None:
            self.x_extra = np.empty((0, d))
            self.y_extra = np.empty(0)
        if self.x_transfer is None:
            self.clear_transfer()

    @property
    def y_diff(self) -> np.ndarray:
        return build_difference_set(self.y_slow, self.y_fast)

    @property
    def transfer_size(self) -> int:
        return len(self.x_transfer)

    def add_paired(self, x, y_slow, y_fast):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        self.x = np.vstack([self.x, x])
        self.y_slow = np.concatenate([self.y_slow, np.ravel(y_slow)])
        self.y_fast = np.concatenate([self.y_fast, np.ravel(y_fast)])

    def add_fast(self, x, y_fast):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        self.x_extra = np.vstack([self.x_extra, x])
        self.y_extra = np.concatenate([self.y_extra, np.ravel(y_fast)])

    def fast_all(self):
        return (np.vstack([self.x, self.x_extra]),
                np.concatenate([self.y_fast, self.y_extra]))

    def set_transfer(self, x, y):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.asarray(y, dtype=float).ravel()
        if len(x) != len(y):
            raise ValueError("transfer arrays disagree on row count")
        # synthetic rows must not shadow truly evaluated ones
        if len(x) and len(self.x):
            dup = (np.abs(x[:, None, :] - self.x[None, :, :]) <= 1e-12).all(-1).any(1)
            x, y = x[~dup], y[~dup]
        self.x_transfer, self.y_transfer = x, y

    def clear_transfer(self):
        self.x_transfer = np.empty((0, self.x.shape[1]))
        self.y_transfer = np.empty(0)

    def slow_with_transfer(self):
        if self.transfer_size == 0:
            return self.x, self.y_slow
        return (np.vstack([self.x, self.x_transfer]),
                np.concatenate([self.y_slow, self.y_transfer]))


@dataclass
class TransferBatch:
    """One auxiliary batch on its way into (or past) the transfer filter."""

    x: np.ndarray
    y_fast: np.ndarray
    y_diff_pred: np.ndarray = None      # co-surrogate output
    y_syn: np.ndarray = None            # synthetic slow labels
    y_slow_mean: np.ndarray = None      # slow surrogate mean at x
    sigma_slow: np.ndarray = None       # slow surrogate standard deviation at x
    selected: np.ndarray = None

    def validate(self):
        n = len(self.x)
        for name in ("y_fast", "y_diff_pred", "y_syn", "y_slow_mean",
                     "sigma_slow", "selected"):
            arr = getattr(self, name)
            if arr is not None and len(arr) != n:
                raise InternalConsistencyError(f"batch field {name} has wrong length")
        if self.selected is not None:
            inside = np.abs(self.y_syn - self.y_slow_mean) <= self.sigma_slow
            if np.any(self.selected & ~inside):
                raise InternalConsistencyError("selected row outside its interval")


def synthesize_slow_labels(co_model, x_a, y_fast_a):
    """Predict difference labels at x_a and lift the fast values to slow space."""
    x_a = np.atleast_2d(np.asarray(x_a, dtype=float))
    y_fast_a = np.asarray(y_fast_a, dtype=float).ravel()
    if len(x_a) != len(y_fast_a):
        raise ValueError("x_a and y_fast_a disagree on row count")
    y_diff_pred, _ = predict_co(co_model, x_a)
    return y_diff_pred, y_diff_pred + y_fast_a


def select_transferable(gp_slow: gp.GpModel, batch: TransferBatch) -> TransferBatch:
    """Mark batch rows whose synthetic label falls inside mean +- one sigma."""
    if batch.y_syn is None:
        raise ValueError("batch has no synthetic labels yet")
    mean, var = gp.predict_many(gp_slow, batch.x)
    sigma = np.sqrt(var)
    batch.y_slow_mean = mean
    batch.sigma_slow = sigma
    batch.selected = np.abs(batch.y_syn - mean) <= sigma
    batch.validate()
    return batch


def cap_training_set(x, y, n_max: int, rng):
    """Cap a labeled set at n_max rows: best half by label plus a uniform draw.

    Labels sort ascending with stable ties; the remainder half is sampled
    without replacement.  Sets already within the cap pass through unchanged.
    """
    if n_max < 2 or n_max % 2 != 0:
        raise ValueError("n_max must be an even number >= 2")
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if len(x) != len(y):
        raise ValueError("x and y disagree on row count")
    if len(x) <= n_max:
        return x.copy(), y.copy()
    half = n_max // 2
    order = np.argsort(y, kind="stable")
    best = order[:half]
    rest = order[half:]
    drawn = rng.choice(rest, size=half, replace=False)
    keep = np.concatenate([best, drawn])
    return x[keep], y[keep]


def co_surrogate_mse(co_model, x_a, true_diffs) -> float:
    """Mean squared error of the co-surrogate on known difference labels."""
    x_a = np.atleast_2d(np.asarray(x_a, dtype=float))
    true_diffs = np.asarray(true_diffs, dtype=float).ravel()
    if len(x_a) != len(true_diffs):
        raise ValueError("x_a and true_diffs disagree on row count")
    pred, _ = predict_co(co_model, x_a)
    return float(np.mean((pred - true_diffs) ** 2))


def predict_co(co_model, x):
    """(mean, variance) from whichever co-surrogate flavor is in use."""
    if isinstance(co_model, gp.GpModel):
        return gp.predict_many(co_model, x)
    return co_model.predict_many(x)


class QuadraticCoSurrogate:
    """Ordinary least squares on the full quadratic basis (1, x_i, x_i^2, x_i*x_j).

    A deliberately rigid stand-in for the difference model; it reports zero
    predictive variance.
    """

    def __init__(self, x, y):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.asarray(y, dtype=float).ravel()
        if len(x) != len(y):
            raise ValueError("x and y disagree on row count")
        if len(x) < 2:
            raise ValueError("need at least two rows")
        self._coef, *_ = np.linalg.lstsq(self._basis(x), y, rcond=None)

    @staticmethod
    def _basis(x: np.ndarray) -> np.ndarray:
        n, d = x.shape
        cols = [np.ones((n, 1)), x, x**2]
        iu, ju = np.triu_indices(d, k=1)
        if iu.size:
            cols.append(x[:, iu] * x[:, ju])
        return np.hstack(cols)

    def predict_many(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        mean = self._basis(x) @ self._coef
        return mean, np.zeros(len(x))
