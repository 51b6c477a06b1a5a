"""Time response evaluation, restored values, and report assembly."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .errors import ResponseDomainError
from .initcond import InitCondition, power_curve
from .metrics import relative_error
from .params import StructuralParams
from .series import RawSeries


@dataclass(frozen=True)
class FittedModel:
    """Everything needed to evaluate the time response of a fitted model."""

    sp: StructuralParams
    ic: InitCondition
    n: int
    x1_first: float
    x1_last: float

    def __post_init__(self):
        for t in range(1, self.n + 1):
            v = power_curve(self.sp.a, self.sp.b, self.sp.alpha, self.ic.c, t)
            if not math.isfinite(v):
                raise ResponseDomainError(f"non-finite response at t={t}", t=t)


def time_response(model: FittedModel, t: float) -> float:
    """Fitted accumulated level at time t."""
    sp = model.sp
    return power_curve(sp.a, sp.b, sp.alpha, model.ic.c, t)


def restored(model: FittedModel, k: int) -> float:
    """Order-0 prediction by first difference of the time response."""
    if k < 2:
        raise ValueError("restored values are defined for k >= 2")
    return time_response(model, k) - time_response(model, k - 1)


def verhulst_modified_restored(model: FittedModel, k: int) -> float:
    """Order-0 prediction from the quadratic grey Verhulst equation.

    Solves the quadratic in x0(k) with the fitted level at k-1 substituted,
    taking the minus-square-root branch. For vanishing mean value parameter
    the quadratic degenerates; the linear solution is used instead.
    """
    if model.sp.alpha != 2.0:
        raise ValueError("quadratic restoration requires alpha = 2")
    if k < 2:
        raise ValueError("quadratic restoration is defined for k >= 2")
    a, b, lam = model.sp.a, model.sp.b, model.sp.lam
    u = time_response(model, k - 1)
    if lam < 1e-8:
        return b * u * u - a * u
    if b == 0.0:
        raise ResponseDomainError("quadratic restoration requires b != 0", t=k)
    disc = (2.0 * b * lam * u - a * lam - 1.0) ** 2 + 4.0 * b * lam * lam * u * (
        a - b * u
    )
    if disc < 0.0:
        raise ResponseDomainError(f"negative discriminant at k={k}", t=k)
    root = math.sqrt(disc)
    denom = 2.0 * b * lam * lam
    minus = (1.0 + a * lam - 2.0 * b * lam * u - root) / denom
    plus = (1.0 + a * lam - 2.0 * b * lam * u + root) / denom
    if minus < 0.0 < plus:
        warnings.warn(
            f"minus-root branch negative at k={k} while plus-root is positive",
            RuntimeWarning,
            stacklevel=2,
        )
    return minus


@dataclass(frozen=True)
class ReportRow:
    t: int
    actual: Optional[float]
    predicted: float
    relative_error_percent: Optional[float]
    phase: str  # "fit" or "forecast"


@dataclass(frozen=True)
class EvaluationReport:
    """Per-point predictions and phase means mirroring a comparison table.

    ``fit_mean_error`` averages the signed errors over k = 1..fit_len,
    ``forecast_mean_error`` over the holdout rows with actuals, and
    ``combined_mean_error`` over all rows with actuals (the convention some
    comparison tables use for a single overall mean).
    """

    rows: tuple[ReportRow, ...]
    fit_mean_error: float
    forecast_mean_error: Optional[float]
    combined_mean_error: float
    config: dict = field(default_factory=dict)


def _mean(vals: list[float]) -> Optional[float]:
    return sum(vals) / len(vals) if vals else None


def evaluate(
    model: FittedModel,
    raw: RawSeries,
    horizon: int = 0,
    restoration: str = "difference",
) -> EvaluationReport:
    """Predict k = 1..fit_len+horizon and compare against available actuals."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    if restoration not in ("difference", "verhulst_quadratic"):
        raise ValueError(f"unknown restoration {restoration!r}")
    n = model.n
    rows = []
    for k in range(1, n + horizon + 1):
        if k == 1:
            # Comparison-table convention: the first row anchors the series,
            # so the prediction echoes the observation with zero error.
            pred = raw.values[0]
        elif restoration == "difference":
            pred = restored(model, k)
        else:
            pred = verhulst_modified_restored(model, k)
        actual = raw.values[k - 1] if k <= len(raw.values) else None
        err = relative_error(actual, pred) if actual is not None else None
        rows.append(
            ReportRow(
                t=k,
                actual=actual,
                predicted=pred,
                relative_error_percent=err,
                phase="fit" if k <= n else "forecast",
            )
        )
    fit_errs = [r.relative_error_percent for r in rows if r.phase == "fit"]
    fc_errs = [
        r.relative_error_percent
        for r in rows
        if r.phase == "forecast" and r.relative_error_percent is not None
    ]
    all_errs = [r.relative_error_percent for r in rows if r.relative_error_percent is not None]
    return EvaluationReport(
        rows=tuple(rows),
        fit_mean_error=_mean(fit_errs),
        forecast_mean_error=_mean(fc_errs),
        combined_mean_error=_mean(all_errs),
    )
