"""Co-surrogate and transfer-filter tests."""

import numpy as np
import pytest

from hetmoo import gp
from hetmoo.errors import InternalConsistencyError
from hetmoo.evo import lhs_sample
from hetmoo.transfer import (QuadraticCoSurrogate, TrainingSets, TransferBatch,
                             build_difference_set, cap_training_set,
                             co_surrogate_mse, predict_co, select_transferable,
                             synthesize_slow_labels)


def test_difference_labels():
    d = build_difference_set([3.0, 1.0, 4.0], [1.0, 1.0, 1.5])
    assert d == pytest.approx([2.0, 0.0, 2.5])
    with pytest.raises(ValueError):
        build_difference_set([1.0, 2.0], [1.0])


def test_training_sets_bookkeeping():
    data = TrainingSets(np.zeros((2, 3)), [1.0, 2.0], [0.5, 0.5])
    assert data.y_diff == pytest.approx([0.5, 1.5])
    data.add_paired(np.ones((1, 3)), [4.0], [1.0])
    assert len(data.x) == 3
    data.add_fast(np.full((2, 3), 0.2), [9.0, 9.5])
    fx, fy = data.fast_all()
    assert fx.shape == (5, 3)
    assert fy == pytest.approx([0.5, 0.5, 1.0, 9.0, 9.5])
    assert data.transfer_size == 0


def test_training_sets_validation():
    with pytest.raises(ValueError):
        TrainingSets(np.zeros((2, 3)), [1.0], [0.5, 0.5])
    data = TrainingSets(np.zeros((2, 3)), [1.0, 2.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        data.set_transfer(np.ones((2, 3)), [1.0])


def test_set_transfer_drops_rows_matching_measured_points():
    data = TrainingSets(np.array([[0.0, 0.0], [1.0, 1.0]]), [1.0, 2.0], [0.5, 0.5])
    tx = np.array([[1.0, 1.0], [0.3, 0.3]])
    data.set_transfer(tx, [5.0, 6.0])
    assert data.transfer_size == 1
    assert data.x_transfer[0] == pytest.approx([0.3, 0.3])
    assert data.y_transfer == pytest.approx([6.0])
    sx, sy = data.slow_with_transfer()
    assert sx.shape == (3, 2)
    assert sy == pytest.approx([1.0, 2.0, 6.0])
    data.clear_transfer()
    assert data.transfer_size == 0


def test_synthesize_exactly_adds_predicted_difference():
    rng = np.random.default_rng(0)
    x = rng.random((20, 2))
    co = QuadraticCoSurrogate(x, x[:, 0] - x[:, 1])
    xa = rng.random((5, 2))
    ya = rng.random(5)
    pred, syn = synthesize_slow_labels(co, xa, ya)
    assert syn.tobytes() == (pred + ya).tobytes()
    with pytest.raises(ValueError):
        synthesize_slow_labels(co, xa, ya[:3])


def test_select_transferable_interval():
    rng = np.random.default_rng(1)
    bounds = (np.zeros(2), np.ones(2))
    xtr = lhs_sample(30, bounds, rng)
    ytr = np.sin(3 * xtr[:, 0]) + xtr[:, 1]
    model = gp.fit(xtr, ytr, gp.FitConfig(bounds=bounds))
    xa = lhs_sample(40, bounds, rng)
    mean, var = gp.predict_many(model, xa)
    sigma = np.sqrt(var)
    # construct synthetic labels that straddle the acceptance boundary
    offsets = np.linspace(-2.0, 2.0, 40)
    batch = TransferBatch(x=xa, y_fast=np.zeros(40), y_diff_pred=np.zeros(40),
                          y_syn=mean + offsets * sigma)
    out = select_transferable(model, batch)
    assert out.selected.tolist() == (np.abs(offsets) <= 1.0).tolist()
    assert out.y_slow_mean == pytest.approx(mean)
    assert out.sigma_slow == pytest.approx(sigma)


def test_select_transferable_near_boundary():
    rng = np.random.default_rng(2)
    bounds = (np.zeros(1), np.ones(1))
    xtr = lhs_sample(10, bounds, rng)
    model = gp.fit(xtr, np.cos(xtr[:, 0] * 4.0), gp.FitConfig(bounds=bounds))
    xa = np.array([[0.42], [0.42]])
    mean, var = gp.predict_many(model, xa)
    sigma = np.sqrt(var)
    assert sigma[0] > 0
    batch = TransferBatch(x=xa, y_fast=np.zeros(2), y_diff_pred=np.zeros(2),
                          y_syn=mean + np.array([0.999, 1.001]) * sigma)
    out = select_transferable(model, batch)
    assert out.selected.tolist() == [True, False]


def test_select_transferable_requires_labels():
    rng = np.random.default_rng(3)
    bounds = (np.zeros(1), np.ones(1))
    xtr = lhs_sample(8, bounds, rng)
    model = gp.fit(xtr, xtr[:, 0] ** 2, gp.FitConfig(bounds=bounds))
    with pytest.raises(ValueError):
        select_transferable(model, TransferBatch(x=np.zeros((1, 1)),
                                                 y_fast=np.zeros(1)))


def test_transfer_batch_validate_catches_bad_selection():
    batch = TransferBatch(x=np.zeros((2, 1)), y_fast=np.zeros(2),
                          y_diff_pred=np.zeros(2), y_syn=np.array([0.0, 5.0]),
                          y_slow_mean=np.zeros(2), sigma_slow=np.ones(2),
                          selected=np.array([True, True]))
    with pytest.raises(InternalConsistencyError):
        batch.validate()
    with pytest.raises(InternalConsistencyError):
        TransferBatch(x=np.zeros((2, 1)), y_fast=np.zeros(3)).validate()


def test_cap_passthrough_below_limit():
    rng = np.random.default_rng(4)
    x = rng.random((10, 2))
    y = rng.random(10)
    cx, cy = cap_training_set(x, y, 10, rng)
    assert np.array_equal(cx, x) and np.array_equal(cy, y)
    # returned arrays are copies, not views
    cx[0, 0] = 99.0
    assert x[0, 0] != 99.0


def test_cap_keeps_best_half_and_draws_rest():
    rng = np.random.default_rng(5)
    y = np.arange(20.0)
    x = y[:, None]
    cx, cy = cap_training_set(x, y, 10, rng)
    assert len(cy) == 10
    assert set(cy[:5]) == {0.0, 1.0, 2.0, 3.0, 4.0}
    assert all(v >= 5.0 for v in cy[5:])
    assert len(np.unique(cy)) == 10


def test_cap_validation():
    rng = np.random.default_rng(6)
    with pytest.raises(ValueError):
        cap_training_set(np.zeros((4, 1)), np.zeros(4), 3, rng)
    with pytest.raises(ValueError):
        cap_training_set(np.zeros((4, 1)), np.zeros(4), 0, rng)
    with pytest.raises(ValueError):
        cap_training_set(np.zeros((4, 1)), np.zeros(3), 4, rng)


def test_co_surrogate_mse_known_values():
    rng = np.random.default_rng(7)
    x = rng.random((30, 2))
    co = QuadraticCoSurrogate(x, 2.0 * x[:, 0])
    # exact recovery of a linear difference makes the error zero
    assert co_surrogate_mse(co, x, 2.0 * x[:, 0]) == pytest.approx(0.0, abs=1e-18)
    shifted = 2.0 * x[:, 0] + 0.5
    assert co_surrogate_mse(co, x, shifted) == pytest.approx(0.25, abs=1e-12)


def test_quadratic_co_surrogate_recovers_quadratic():
    rng = np.random.default_rng(8)
    x = rng.random((40, 3))

    def f(a):
        return 1.5 - a[:, 0] + 2.0 * a[:, 2] ** 2 + 0.7 * a[:, 0] * a[:, 1]

    co = QuadraticCoSurrogate(x, f(x))
    q = rng.random((15, 3))
    mean, var = co.predict_many(q)
    assert mean == pytest.approx(f(q), abs=1e-9)
    assert var == pytest.approx(np.zeros(15), abs=0.0)


def test_quadratic_co_surrogate_validation():
    with pytest.raises(ValueError):
        QuadraticCoSurrogate(np.zeros((1, 2)), np.zeros(1))
    with pytest.raises(ValueError):
        QuadraticCoSurrogate(np.zeros((3, 2)), np.zeros(2))


def test_predict_co_dispatches_both_flavors():
    rng = np.random.default_rng(9)
    bounds = (np.zeros(2), np.ones(2))
    x = lhs_sample(25, bounds, rng)
    y = x[:, 0] + 0.1 * x[:, 1]
    gp_model = gp.fit(x, y, gp.FitConfig(bounds=bounds))
    quad = QuadraticCoSurrogate(x, y)
    for model in (gp_model, quad):
        mean, var = predict_co(model, x[:5])
        assert mean.shape == (5,)
        assert var.shape == (5,)
        assert np.all(var >= 0.0)
