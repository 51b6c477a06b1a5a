"""Scikit-learn style wrapper around the grey power fitting pipeline."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .optimize import FitPlan, optimize_lambda
from .params import ResidualObjective
from .response import restored, time_response
from .series import RawSeries

_NORMS = {"1": 1.0, "2": 2.0, "inf": math.inf}


class GreyPowerForecaster(BaseEstimator):
    """Univariate small-sample forecaster based on the grey power model.

    Parameters
    ----------
    alpha : power index; 0 is the GM(1,1) model, 2 the grey Verhulst model.
    lam : mean value parameter in [0, 1], or "grid" to optimize it.
    fit_method : "lsq" for least squares on the grey equation, "norm" for
        p-norm residual minimization.
    norm : 1, 2 or "inf"; residual norm for fitting and lambda scoring.
    relative : divide residuals by the raw observations before taking norms.
    ic : initial-condition policy, one of "beta-fixed", "c-least-squares",
        "c-minimize-f1", "c-minimize-f2".
    beta : blend weight of the first accumulated point when ic="beta-fixed";
        1 reproduces the classic model.
    lambda_scoring : "equation" scores lambda candidates by grey-equation
        residuals, "prediction" by in-sample relative prediction errors.
    """

    def __init__(
        self,
        alpha=0.0,
        lam=0.5,
        fit_method="lsq",
        norm=2,
        relative=False,
        ic="beta-fixed",
        beta=1.0,
        lambda_scoring="equation",
    ):
        self.alpha = alpha
        self.lam = lam
        self.fit_method = fit_method
        self.norm = norm
        self.relative = relative
        self.ic = ic
        self.beta = beta
        self.lambda_scoring = lambda_scoring

    def _plan(self) -> FitPlan:
        p = _NORMS.get(str(self.norm))
        if p is None:
            raise ValueError(f"norm must be 1, 2 or 'inf', got {self.norm!r}")
        obj = ResidualObjective(p=p, relative=bool(self.relative))
        grid = isinstance(self.lam, str)
        if grid and self.lam != "grid":
            raise ValueError(f"lam must be a number in [0, 1] or 'grid', got {self.lam!r}")
        return FitPlan(
            alpha=float(self.alpha),
            lambda_policy="grid" if grid else "fixed",
            lam=0.5 if grid else float(self.lam),
            param_policy=self.fit_method,
            param_objective=obj if self.fit_method == "norm" else None,
            lambda_objective=obj,
            ic_policy=self.ic,
            beta=float(self.beta),
            lambda_scoring=self.lambda_scoring,
        )

    def fit(self, y, X=None):
        """Fit on a 1-D strictly positive series; X is ignored (API shim)."""
        y = np.asarray(y, dtype=float).ravel()
        raw = RawSeries(y.tolist())
        result = optimize_lambda(raw, self._plan())
        self.result_ = result
        self.model_ = result.model
        self.a_ = result.model.sp.a
        self.b_ = result.model.sp.b
        self.lambda_ = result.model.sp.lam
        self.beta_ = result.model.ic.beta
        self.c_ = result.model.ic.c
        self.n_ = result.model.n
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("call fit before predicting")

    def predict(self, n_periods=1):
        """Forecast the next n_periods restored values past the fit window."""
        self._check_fitted()
        n = self.n_
        return np.array(
            [restored(self.model_, k) for k in range(n + 1, n + 1 + int(n_periods))]
        )

    def fitted_values(self):
        """In-sample restored values for k = 1..n."""
        self._check_fitted()
        vals = [time_response(self.model_, 1)]
        vals += [restored(self.model_, k) for k in range(2, self.n_ + 1)]
        return np.array(vals)
