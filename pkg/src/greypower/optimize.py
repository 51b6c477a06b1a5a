"""Outer search over the mean value parameter and pipeline orchestration."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from ._optim import golden_section
from .errors import (
    DegenerateDesignError,
    GreyModelError,
    ParameterDomainError,
)
from .estimation import lsq_fit, norm_fit
from .initcond import resolve as resolve_initcond
from .metrics import objective_value, vector_norm
from .params import ResidualObjective, StructuralParams
from .response import EvaluationReport, FittedModel, evaluate
from .series import RawSeries, ago

LAMBDA_GRID_STEP = 0.01
LAMBDA_REFINE_WIDTH = 1e-7


@dataclass(frozen=True)
class FitPlan:
    """User intent for one model fit.

    ``param_objective`` drives norm-based (a, b) estimation when
    ``param_policy`` is "norm"; ``lambda_objective`` scores candidate mean
    value parameters (defaults to ``param_objective``, else plain 2-norm).
    """

    alpha: float = 0.0
    lambda_policy: str = "fixed"  # "fixed" | "grid"
    lam: float = 0.5
    param_policy: str = "lsq"  # "lsq" | "norm"
    param_objective: Optional[ResidualObjective] = None
    lambda_objective: Optional[ResidualObjective] = None
    ic_policy: str = "beta-fixed"
    beta: float = 1.0
    restoration: str = "difference"
    lambda_scoring: str = "equation"  # "equation" | "prediction"
    name: str = ""

    def __post_init__(self):
        if self.lambda_scoring not in ("equation", "prediction"):
            raise ValueError(f"unknown lambda scoring {self.lambda_scoring!r}")
        if self.alpha == 1.0:
            raise ParameterDomainError("power index alpha = 1 is excluded")
        if self.lambda_policy not in ("fixed", "grid"):
            raise ValueError(f"unknown lambda policy {self.lambda_policy!r}")
        if self.lambda_policy == "fixed" and not 0.0 <= self.lam <= 1.0:
            raise ParameterDomainError(
                f"fixed mean value parameter must be in [0, 1], got {self.lam}"
            )
        if self.param_policy not in ("lsq", "norm"):
            raise ValueError(f"unknown parameter policy {self.param_policy!r}")
        if self.param_policy == "norm" and self.param_objective is None:
            object.__setattr__(self, "param_objective", ResidualObjective(2.0, False))

    @property
    def scoring_objective(self) -> ResidualObjective:
        if self.lambda_objective is not None:
            return self.lambda_objective
        if self.param_objective is not None:
            return self.param_objective
        return ResidualObjective(2.0, False)


@dataclass(frozen=True)
class FitResult:
    model: FittedModel
    achieved_objective: float
    lambda_trace: tuple[tuple[float, float], ...]
    converged: bool


def _prediction_score(raw: RawSeries, sp: StructuralParams, plan: FitPlan) -> float:
    """p-norm of in-sample relative prediction errors of the resolved model."""
    import warnings

    acc = ago(raw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        ic = resolve_initcond(plan.ic_policy, sp, acc, beta=plan.beta)
        model = FittedModel(
            sp=sp, ic=ic, n=raw.fit_len,
            x1_first=acc.values[0], x1_last=acc.values[-1],
        )
        report = evaluate(model, raw, horizon=0, restoration=plan.restoration)
    errs = [
        r.relative_error_percent / 100.0
        for r in report.rows
        if r.t >= 2 and r.relative_error_percent is not None
    ]
    return vector_norm(errs, plan.scoring_objective.p)


def _inner_fit(raw: RawSeries, lam: float, plan: FitPlan):
    """Fit (a, b) at fixed lam; returns (params, score, converged)."""
    if plan.param_policy == "lsq":
        sp = lsq_fit(raw, lam, plan.alpha)
        converged = True
    else:
        res = norm_fit(raw, lam, plan.alpha, plan.param_objective)
        sp, converged = res.params, res.converged
    if plan.lambda_scoring == "prediction":
        try:
            score = _prediction_score(raw, sp, plan)
        except GreyModelError:
            score = math.inf
    else:
        score = objective_value(raw, sp, plan.scoring_objective)
    return sp, score, converged


def optimize_lambda(raw: RawSeries, plan: FitPlan) -> FitResult:
    """Resolve lam (grid + golden-section refinement), (a, b), then c/beta."""
    trace: list[tuple[float, float]] = []
    best = None  # (score, lam, sp, converged)

    if plan.lambda_policy == "fixed":
        sp, score, conv = _inner_fit(raw, plan.lam, plan)
        trace.append((plan.lam, score))
        best = (score, plan.lam, sp, conv)
    else:
        steps = round(1.0 / LAMBDA_GRID_STEP)
        for i in range(steps + 1):
            lam = i / steps
            try:
                sp, score, conv = _inner_fit(raw, lam, plan)
            except DegenerateDesignError:
                continue
            trace.append((lam, score))
            if best is None or (score, lam) < (best[0], best[1]):
                best = (score, lam, sp, conv)
        if best is None:
            raise DegenerateDesignError(
                "every grid point produced a degenerate design"
            )

        # Refine around the best grid point; keep the best point ever seen so
        # refinement can only improve on the grid winner.
        cache: dict[float, tuple] = {}

        def fun(lam):
            try:
                sp, score, conv = _inner_fit(raw, lam, plan)
            except DegenerateDesignError:
                return math.inf
            cache[lam] = (sp, conv)
            return score

        lo = max(0.0, best[1] - LAMBDA_GRID_STEP)
        hi = min(1.0, best[1] + LAMBDA_GRID_STEP)
        lam_r, score_r = golden_section(fun, lo, hi, tol=LAMBDA_REFINE_WIDTH)
        if score_r < best[0] and lam_r in cache:
            sp_r, conv_r = cache[lam_r]
            best = (score_r, lam_r, sp_r, conv_r)

    score, lam, sp, converged = best
    acc = ago(raw)
    ic = resolve_initcond(plan.ic_policy, sp, acc, beta=plan.beta)
    model = FittedModel(
        sp=sp,
        ic=ic,
        n=raw.fit_len,
        x1_first=acc.values[0],
        x1_last=acc.values[-1],
    )
    return FitResult(
        model=model,
        achieved_objective=score,
        lambda_trace=tuple(trace),
        converged=converged,
    )


def fit_pipeline(
    raw: RawSeries, plan: FitPlan, horizon: int = 0
) -> tuple[FitResult, EvaluationReport]:
    """Full fit + evaluation; report carries a configuration echo."""
    try:
        result = optimize_lambda(raw, plan)
    except GreyModelError as exc:
        raise type(exc)(f"fitting: {exc}") from exc
    try:
        report = evaluate(raw=raw, model=result.model, horizon=horizon,
                          restoration=plan.restoration)
    except GreyModelError as exc:
        raise type(exc)(f"evaluation: {exc}") from exc
    sp, ic = result.model.sp, result.model.ic
    obj = plan.scoring_objective
    config = {
        "name": plan.name,
        "alpha": sp.alpha,
        "lambda": sp.lam,
        "a": sp.a,
        "b": sp.b,
        "beta": ic.beta,
        "c": ic.c,
        "ic_policy": ic.policy,
        "norm": "inf" if math.isinf(obj.p) else obj.p,
        "relative": obj.relative,
        "param_policy": plan.param_policy,
        "lambda_scoring": plan.lambda_scoring,
        "restoration": plan.restoration,
    }
    return result, replace(report, config=config)
