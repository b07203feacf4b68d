import math

import numpy as np
import pytest

import sdr


def test_schedule_and_thresholds():
    assert sdr.dimension_schedule(60) == [60, 23, 9, 4, 2, 1]
    assert math.isclose(sdr.threshold_gaussian(0.1, 1000, 60, 0.1), 8.015636169575166624, rel_tol=1e-10)
    assert sdr.tau(3.0) == 0.25


def test_estimate_on_gmc_sample():
    x, mask, mu = sdr.generate_sample(2000, 20, "gmc", 0.1, seed=3)
    assert x.shape == (2000, 20)
    assert sum(not m for m in mask) == 200
    cfg = sdr.SdrConfig()
    cfg.eps_star = 0.1
    est, trace = sdr.sdr_estimate(x, np.eye(20), cfg)
    assert est.shape == (20,)
    assert np.linalg.norm(est - mu) < 0.5
    assert trace["schedule"] == sdr.dimension_schedule(20)
    assert len(trace["levels"]) == len(trace["schedule"])
    assert np.linalg.norm(sdr.oracle_mean(x, mask) - mu) < 0.2


def test_zero_dispersion_and_median():
    pt = np.array([1.0, -2.0, 3.0])
    est, _ = sdr.sdr_estimate(np.tile(pt, (10, 1)), np.eye(3))
    assert np.allclose(est, pt, rtol=0, atol=1e-12)
    est, _ = sdr.sdr_estimate(np.array([[0.0], [1.0], [2.0], [3.0], [100.0]]), np.eye(1))
    assert est[0] == 2.0
    assert sdr.univariate_median([4.0, 2.0, 1.0, 3.0]) == 2.0


def test_errors_map_to_python_exceptions():
    x = np.random.default_rng(0).normal(size=(30, 4))
    with pytest.raises(sdr.DataError):
        sdr.sdr_estimate(x, np.zeros((4, 4)))
    with pytest.raises(ValueError):
        sdr.sdr_estimate_approx(x, np.eye(4), 0.7)
    cfg = sdr.SdrConfig()
    cfg.threshold_override = 1e-9
    with pytest.raises(sdr.FilterError):
        sdr.sdr_estimate(x, np.eye(4), cfg)


def test_run_experiment_rows():
    rows = sdr.run_experiment("cse", [60], [5], [0.1], trials=2, seed=1, estimators="sdr,gm")
    assert [r["estimator"] for r in rows] == ["sdr", "gm", "sdr", "gm"]
    assert all(r["l2_error"] >= 0 for r in rows)
    again = sdr.run_experiment("cse", [60], [5], [0.1], trials=2, seed=1, estimators="sdr,gm")
    assert [r["l2_error"] for r in rows] == [r["l2_error"] for r in again]
