"""Smoke tests for the python bindings."""

import math

import pytest

import ntband


@pytest.fixture()
def params():
    return ntband.MarketParams(
        r=1.0,
        mu=[1.3, 1.5],
        sigma=[1.0, 1.0],
        rho=[[1.0, 0.5], [0.5, 1.0]],
        k=0.005,
        T=1.0,
        dt=1e-2,
    )


def test_version():
    assert ntband.__version__


def test_optimal_weights(params):
    p = ntband.optimal_weights(params)
    assert p[0] == pytest.approx(1.0 / 15.0, rel=1e-12)
    assert p[1] == pytest.approx(7.0 / 15.0, rel=1e-12)
    model = ntband.LtgmModel(params)
    assert model.bond_weight == pytest.approx(7.0 / 15.0, rel=1e-12)
    assert model.growth_rate == pytest.approx(169.0 / 150.0, rel=1e-12)


def test_value_and_payoff_agree(params):
    p = ntband.optimal_weights(params)
    value = ntband.ltgm_value(1.0, 0.0, params)
    payoff = ntband.expected_log_payoff(params, 1.0, p)
    assert payoff == pytest.approx(value, rel=1e-12)
    assert ntband.expected_log_payoff(params, 1.0, [0.3, 0.5]) == pytest.approx(
        1.095, rel=1e-12
    )


def test_band_widths(params):
    coeff = ntband.band_width_ltgm(params, 1.0, 1.0)
    assert coeff[0] == pytest.approx(0.16331065444754705, rel=1e-12)
    assert coeff[1] == pytest.approx(0.43577841958169437, rel=1e-12)
    # cube-root cost scaling
    at_k = ntband.band_width_ltgm(params, 0.005, 1.0)
    at_8k = ntband.band_width_ltgm(params, 0.04, 1.0)
    assert at_8k[0] == pytest.approx(2.0 * at_k[0], rel=1e-12)


def test_d_matrix(params):
    model = ntband.LtgmModel(params)
    d = ntband.d_matrix(params, model, 1.0, 0.0)
    assert d[0][0] == pytest.approx(49.0 / 33750.0, rel=1e-12)
    width = ntband.band_width_general(d[0][0], 1.0, 1.0, -1.0, 0.005)
    closed = ntband.band_width_ltgm(params, 0.005, 1.0)[0]
    assert width == pytest.approx(closed, rel=1e-12)


def test_invalid_correlation_raises():
    with pytest.raises(ntband.NotPositiveDefiniteError):
        ntband.optimal_weights(
            ntband.MarketParams(
                r=1.0,
                mu=[1.3, 1.5],
                sigma=[1.0, 1.0],
                rho=[[1.0, 1.0], [1.0, 1.0]],
                k=0.0,
                T=1.0,
                dt=1e-2,
            )
        )


def test_ensemble_reaches_analytical_growth(params):
    summary = ntband.run_ensemble(
        params, "frictionless", base_seed=7, paths=400, recording_points=20
    )
    assert summary.completed == 400
    assert summary.aborted == 0
    target = 169.0 / 150.0
    assert abs(summary.mean_log_wealth[-1] - target) < 3.0 * summary.sem[-1] + 1e-2


def test_ensemble_determinism(params):
    one = ntband.run_ensemble(
        params, "banded", base_seed=11, paths=60, recording_points=10, workers=1
    )
    many = ntband.run_ensemble(
        params, "banded", base_seed=11, paths=60, recording_points=10, workers=4
    )
    assert one.mean_log_wealth == many.mean_log_wealth
    assert one.sem == many.sem


def test_paired_compare(params):
    a = ntband.run_ensemble(
        params, "frictionless", base_seed=5, paths=50, recording_points=10
    )
    b = ntband.run_ensemble(
        params,
        "frictionless",
        base_seed=5,
        paths=50,
        recording_points=10,
        weights=[0.3, 0.5],
    )
    diff = ntband.compare(a, b)
    assert diff.paired
    assert diff.n == 50
    assert diff.mean_diff[-1] > 0.0
    assert math.isfinite(diff.sem[-1])
