"""Kriging (Gaussian process) regression with an anisotropic power-exponential kernel.

The correlation between two inputs is ``exp(-sum_k theta_k |xi_k - xj_k|**p_k)``.
Fitting standardizes the outputs, min-max normalizes the inputs, and maximizes
the concentrated log-likelihood over per-dimension ``theta`` with a multi-start
coordinate pattern search in log10 space.  Predictions interpolate the training
data and carry a variance that vanishes at training rows and approaches the
prior variance (inflated by the mean-estimation term) far away from them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cholesky, solve_triangular

from .errors import InsufficientDataError, NumericalDegeneracyError

# Smallest admissible process variance before a fit is flagged degenerate.
SIGMA2_FLOOR = 1e-300


@dataclass(frozen=True)
class GpHyperParams:
    """Kernel hyperparameters: length-scale weights, smoothness exponents, nugget."""

    theta: np.ndarray
    p: np.ndarray
    nugget: float = 1e-10

    def __post_init__(self):
        theta = np.atleast_1d(np.asarray(self.theta, dtype=float))
        p = np.atleast_1d(np.asarray(self.p, dtype=float))
        if p.shape == (1,) and theta.shape != (1,):
            p = np.full(theta.shape, p[0])
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "p", p)
        if theta.ndim != 1 or p.shape != theta.shape:
            raise ValueError("theta and p must be 1-d arrays of equal length")
        if not np.all(theta > 0):
            raise ValueError("theta must be strictly positive")
        if not (np.all(p >= 1.0) and np.all(p <= 2.0)):
            raise ValueError("smoothness exponents must lie in [1, 2]")
        if self.nugget < 0:
            raise ValueError("nugget must be nonnegative")


@dataclass(frozen=True)
class FitConfig:
    """Options for :func:`fit`.

    ``bounds`` are the (lower, upper) input bounds used for min-max
    normalization; when omitted the data range is used.  The theta search is a
    multi-start pattern search over ``log10(theta)`` limited to
    ``[log_theta_lo, log_theta_hi]`` per dimension.
    """

    bounds: tuple | None = None
    p: float = 2.0
    n_starts: int = 8
    max_sweeps: int = 100
    step_init: float = 0.5
    step_shrink: float = 0.5
    step_tol: float = 1e-3
    log_theta_lo: float = -3.0
    log_theta_hi: float = 3.0
    nugget: float = 1e-10
    nugget_max: float = 1e-4
    search_seed: int = 0


@dataclass
class GpModel:
    """A fitted Kriging model plus the cached factorizations predictions need."""

    x_train: np.ndarray        # normalized inputs, deduplicated
    y_train: np.ndarray        # standardized outputs
    hyper: GpHyperParams
    mu_hat: float              # GLS mean of the standardized outputs
    sigma2_hat: float          # concentrated process variance
    chol: np.ndarray           # lower Cholesky factor of the regularized C
    alpha: np.ndarray          # C^{-1} (y - mu 1)
    one_c_one: float           # 1^T C^{-1} 1
    x_lo: np.ndarray
    x_span: np.ndarray
    y_mean: float
    y_scale: float
    degenerate: bool = False
    psi: float = float("nan")  # concentrated log-likelihood at the fitted theta

    @property
    def n_train(self) -> int:
        return self.x_train.shape[0]


@dataclass(frozen=True)
class LikelihoodProfile:
    """Concentrated-likelihood terms for one hyperparameter setting."""

    psi: float
    mu_hat: float
    sigma2_hat: float
    log_det: float
    nugget_used: float
    degenerate: bool


def correlation(xi, xj, hyper: GpHyperParams) -> float:
    """Kernel correlation between two input vectors."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    xj = np.atleast_1d(np.asarray(xj, dtype=float))
    if xi.shape != xj.shape or xi.shape != hyper.theta.shape:
        raise ValueError("input dimension does not match hyperparameters")
    d = np.abs(xi - xj)
    return float(np.exp(-np.dot(hyper.theta, d ** hyper.p)))


def _pairwise_powers(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """|xi - xj|**p per dimension, flattened to (n*n, d) for fast C rebuilds."""
    diff = np.abs(x[:, None, :] - x[None, :, :])
    if np.all(p == 2.0):
        powered = diff * diff
    else:
        powered = diff ** p
    n, _, d = powered.shape
    return powered.reshape(n * n, d)


def _chol_with_escalation(c: np.ndarray, nugget: float, nugget_max: float):
    """Cholesky of c + nugget*I, escalating the nugget tenfold on failure."""
    n = c.shape[0]
    idx = np.arange(n)
    level = nugget
    while True:
        c[idx, idx] = 1.0 + level
        try:
            return cholesky(c, lower=True, check_finite=False), level
        except LinAlgError:
            if level >= nugget_max:
                raise NumericalDegeneracyError(
                    f"correlation matrix not positive definite at nugget {level:g}"
                )
            level = 1e-10 if level < 1e-10 else min(level * 10.0, nugget_max)


def _profile_from_chol(chol_l: np.ndarray, y: np.ndarray, nugget_used: float) -> LikelihoodProfile:
    n = y.shape[0]
    if np.all(y == y[0]):
        # constant outputs leave no residual variance to profile
        mu, sigma2 = float(y[0]), 0.0
    else:
        a = solve_triangular(chol_l, y, lower=True, check_finite=False)
        b = solve_triangular(chol_l, np.ones(n), lower=True, check_finite=False)
        btb = float(b @ b)
        mu = float(b @ a) / btb
        resid = a - mu * b
        sigma2 = float(resid @ resid) / n
    degenerate = sigma2 < SIGMA2_FLOOR
    log_det = 2.0 * float(np.sum(np.log(np.diag(chol_l))))
    psi = -0.5 * (n * math.log(max(sigma2, SIGMA2_FLOOR)) + log_det)
    return LikelihoodProfile(psi, mu, sigma2, log_det, nugget_used, degenerate)


def concentrated_likelihood(
    hyper: GpHyperParams,
    x: np.ndarray,
    y: np.ndarray,
    nugget_max: float = 1e-4,
) -> LikelihoodProfile:
    """Profile likelihood of ``hyper`` on already-normalized training data."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if x.shape[0] != y.shape[0]:
        raise ValueError("x and y row counts differ")
    if x.shape[0] < 2:
        raise InsufficientDataError("likelihood needs at least two rows")
    powered = _pairwise_powers(x, hyper.p)
    n = x.shape[0]
    c = np.exp(-(powered @ hyper.theta)).reshape(n, n)
    chol_l, used = _chol_with_escalation(c, hyper.nugget, nugget_max)
    return _profile_from_chol(chol_l, y, used)


def log_likelihood(hyper: GpHyperParams, x: np.ndarray, y: np.ndarray) -> float:
    """Concentrated log-likelihood value (see :func:`concentrated_likelihood`)."""
    return concentrated_likelihood(hyper, x, y).psi


def _dedup_keep_first(x: np.ndarray, y: np.ndarray):
    _, first = np.unique(x, axis=0, return_index=True)
    keep = np.sort(first)
    return x[keep], y[keep]


def _pattern_search(fun, x0, lo, hi, max_sweeps, step_init, shrink, tol):
    """Coordinate pattern search (maximization) with a Hooke-Jeeves pattern move."""
    x = np.clip(np.asarray(x0, dtype=float), lo, hi)
    fx = fun(x)
    step = step_init
    sweeps = 0
    while sweeps < max_sweeps and step >= tol:
        sweeps += 1
        base = x.copy()
        for k in range(x.size):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[k] = min(max(cand[k] + sign * step, lo), hi)
                if cand[k] == x[k]:
                    continue
                fc = fun(cand)
                if fc > fx:
                    x, fx = cand, fc
                    break
        if np.array_equal(x, base):
            step *= shrink
            continue
        # pattern move: keep going in the direction the sweep moved
        while sweeps < max_sweeps:
            sweeps += 1
            cand = np.clip(x + (x - base), lo, hi)
            if np.array_equal(cand, x):
                break
            fc = fun(cand)
            if fc <= fx:
                break
            base, x, fx = x, cand, fc
    return x, fx


def _start_points(n_starts: int, dim: int, lo: float, hi: float, seed: int) -> np.ndarray:
    """theta search starts: all-ones plus latin-hypercube points in log space."""
    starts = [np.zeros(dim)]
    extra = n_starts - 1
    if extra > 0:
        rng = np.random.default_rng(seed)
        pts = np.empty((extra, dim))
        for j in range(dim):
            perm = rng.permutation(extra)
            pts[:, j] = (perm + rng.random(extra)) / extra
        starts.extend(lo + pts * (hi - lo))
    return np.asarray(starts)


def fit(x: np.ndarray, y: np.ndarray, cfg: FitConfig | None = None) -> GpModel:
    """Fit a Kriging model to (x, y).

    Exact duplicate rows are dropped (first occurrence kept).  Inputs are
    min-max normalized with ``cfg.bounds`` (or the data range), outputs are
    standardized per fit.  Constant outputs give a degenerate model that
    predicts the constant with zero variance.
    """
    cfg = cfg or FitConfig()
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if x.shape[0] != y.shape[0]:
        raise ValueError("x and y row counts differ")
    x, y = _dedup_keep_first(x, y)
    n, dim = x.shape
    if n < 2:
        raise InsufficientDataError("need at least two distinct training rows")

    if cfg.bounds is not None:
        lo = np.asarray(cfg.bounds[0], dtype=float)
        hi = np.asarray(cfg.bounds[1], dtype=float)
    else:
        lo, hi = x.min(axis=0), x.max(axis=0)
    span = hi - lo
    span = np.where(span > 0, span, 1.0)
    xn = (x - lo) / span

    y_mean = float(y.mean())
    y_std = float(y.std())
    degenerate_y = y_std == 0.0
    y_scale = y_std if y_std > 0 else 1.0
    yn = (y - y_mean) / y_scale

    p = np.full(dim, float(cfg.p))
    powered = _pairwise_powers(xn, p)
    diag = np.arange(n)

    def psi_of(log_theta: np.ndarray) -> float:
        c = np.exp(-(powered @ (10.0 ** log_theta))).reshape(n, n)
        c[diag, diag] = 1.0 + cfg.nugget
        try:
            chol_l = cholesky(c, lower=True, check_finite=False)
        except LinAlgError:
            try:
                chol_l, _ = _chol_with_escalation(c, cfg.nugget * 10.0, cfg.nugget_max)
            except NumericalDegeneracyError:
                return -np.inf
        return _profile_from_chol(chol_l, yn, cfg.nugget).psi

    if degenerate_y:
        best_log = np.zeros(dim)
        best_psi = float("nan")
    else:
        best_log, best_psi = None, -np.inf
        for start in _start_points(cfg.n_starts, dim, cfg.log_theta_lo,
                                   cfg.log_theta_hi, cfg.search_seed):
            cand, val = _pattern_search(
                psi_of, start, cfg.log_theta_lo, cfg.log_theta_hi,
                cfg.max_sweeps, cfg.step_init, cfg.step_shrink, cfg.step_tol)
            if val > best_psi:
                best_log, best_psi = cand, val
        if best_log is None or not np.isfinite(best_psi):
            raise NumericalDegeneracyError("no hyperparameter setting factorized")

    theta = 10.0 ** best_log
    c = np.exp(-(powered @ theta)).reshape(n, n)
    chol_l, nugget_used = _chol_with_escalation(c, cfg.nugget, cfg.nugget_max)
    profile = _profile_from_chol(chol_l, yn, nugget_used)
    resid = yn - profile.mu_hat
    alpha = solve_triangular(
        chol_l.T,
        solve_triangular(chol_l, resid, lower=True, check_finite=False),
        lower=False, check_finite=False)
    b = solve_triangular(chol_l, np.ones(n), lower=True, check_finite=False)
    hyper = GpHyperParams(theta=theta, p=p, nugget=nugget_used)
    return GpModel(
        x_train=xn, y_train=yn, hyper=hyper,
        mu_hat=profile.mu_hat,
        sigma2_hat=0.0 if profile.degenerate else profile.sigma2_hat,
        chol=chol_l, alpha=alpha, one_c_one=float(b @ b),
        x_lo=lo, x_span=span, y_mean=y_mean, y_scale=y_scale,
        degenerate=profile.degenerate or degenerate_y,
        psi=profile.psi,
    )


def predict_many(model: GpModel, x: np.ndarray):
    """Vectorized posterior mean and variance at each row of ``x``."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    xn = (x - model.x_lo) / model.x_span
    diff = np.abs(xn[:, None, :] - model.x_train[None, :, :])
    if np.all(model.hyper.p == 2.0):
        powered = diff * diff
    else:
        powered = diff ** model.hyper.p
    weighted = powered @ model.hyper.theta
    r = np.exp(-weighted)                               # (m, n)
    # at zero distance r is a column of the regularized C, nugget included,
    # which keeps prediction at a training row exactly interpolating
    r[weighted == 0.0] += model.hyper.nugget
    mean_n = model.mu_hat + r @ model.alpha
    v = solve_triangular(model.chol, r.T, lower=True, check_finite=False)
    r_c_r = np.einsum("ij,ij->j", v, v)
    slack = 1.0 - r_c_r
    var_n = model.sigma2_hat * (slack + slack * slack / model.one_c_one)
    np.maximum(var_n, 0.0, out=var_n)
    return mean_n * model.y_scale + model.y_mean, var_n * model.y_scale**2


def predict(model: GpModel, x: np.ndarray):
    """Posterior (mean, variance) at one point; warns when x leaves the fit box."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < model.x_lo) or np.any(x > model.x_lo + model.x_span):
        warnings.warn("prediction point lies outside the normalization bounds",
                      stacklevel=2)
    mean, var = predict_many(model, x[None, :])
    return float(mean[0]), float(var[0])
