import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from greypower import GreyPowerForecaster, RawSeries, lsq_fit
from greypower.response import restored, time_response

from conftest import EXP_SERIES, PRODUCTION_SERIES


def test_get_set_params_round_trip():
    est = GreyPowerForecaster(alpha=2.0, lam="grid", norm=1, relative=True)
    params = est.get_params()
    assert params["alpha"] == 2.0
    assert params["lam"] == "grid"
    est2 = GreyPowerForecaster().set_params(**params)
    assert est2.get_params() == params


def test_clone_is_unfitted_copy():
    est = GreyPowerForecaster(alpha=2.0, ic="c-minimize-f2").fit(PRODUCTION_SERIES[:9])
    copy = clone(est)
    assert copy.get_params() == est.get_params()
    assert not hasattr(copy, "model_")


def test_predict_before_fit_raises():
    est = GreyPowerForecaster()
    with pytest.raises(NotFittedError):
        est.predict(2)
    with pytest.raises(NotFittedError):
        est.fitted_values()


def test_fit_exposes_parameters():
    est = GreyPowerForecaster().fit(EXP_SERIES[:5])
    direct = lsq_fit(RawSeries(EXP_SERIES[:5]), 0.5, 0.0)
    assert est.a_ == pytest.approx(direct.a, rel=1e-12)
    assert est.b_ == pytest.approx(direct.b, rel=1e-12)
    assert est.lambda_ == 0.5
    assert est.beta_ == 1.0
    assert est.n_ == 5


def test_predict_matches_restored_values():
    est = GreyPowerForecaster().fit(EXP_SERIES[:5])
    preds = est.predict(2)
    expected = [restored(est.model_, k) for k in (6, 7)]
    assert preds == pytest.approx(expected, rel=1e-12)
    assert preds.shape == (2,)


def test_fitted_values_shape_and_anchor():
    est = GreyPowerForecaster().fit(EXP_SERIES[:5])
    fitted = est.fitted_values()
    assert fitted.shape == (5,)
    assert fitted[0] == pytest.approx(time_response(est.model_, 1), rel=1e-12)


def test_benchmark_forecast_accuracy():
    est = GreyPowerForecaster().fit(EXP_SERIES[:5])
    preds = est.predict(2)
    actual = np.array(EXP_SERIES[5:])
    rel = np.abs(preds - actual) / actual
    assert np.all(rel < 0.10)


def test_grid_lambda_fits_and_reports():
    est = GreyPowerForecaster(lam="grid", ic="c-minimize-f2").fit(EXP_SERIES[:5])
    assert 0.0 <= est.lambda_ <= 1.0
    assert est.result_.lambda_trace


def test_rejects_bad_norm_and_lam():
    with pytest.raises(ValueError):
        GreyPowerForecaster(norm=3).fit(EXP_SERIES[:5])
    with pytest.raises(ValueError):
        GreyPowerForecaster(lam="auto").fit(EXP_SERIES[:5])


def test_accepts_column_vector_input():
    y = np.array(EXP_SERIES[:5]).reshape(-1, 1)
    est = GreyPowerForecaster().fit(y)
    assert est.n_ == 5
