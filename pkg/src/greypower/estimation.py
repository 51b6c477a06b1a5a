"""Structural parameter estimation for fixed mean value parameter and power index."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._optim import nelder_mead
from .errors import DegenerateDesignError, ParameterDomainError
from .metrics import objective_value
from .params import ResidualObjective, StructuralParams
from .series import RawSeries, ago, mean_sequence

_DET_GUARD = 1e-12


def _solve_weighted_lsq(z, y, alpha, weights) -> tuple[float, float]:
    """Solve min sum w_k^2 (y_k - (-a z_k + b z_k^alpha))^2 via 2x2 normal equations."""
    g11 = g12 = g22 = r1 = r2 = 0.0
    for zk, yk, wk in zip(z, y, weights):
        c1 = -zk * wk
        c2 = zk**alpha * wk
        g11 += c1 * c1
        g12 += c1 * c2
        g22 += c2 * c2
        r1 += c1 * yk * wk
        r2 += c2 * yk * wk
    det = g11 * g22 - g12 * g12
    norm = max(abs(g11) + abs(g12), abs(g12) + abs(g22))
    if abs(det) < _DET_GUARD * (1.0 + norm):
        raise DegenerateDesignError("regressor columns are linearly dependent")
    a = (g22 * r1 - g12 * r2) / det
    b = (g11 * r2 - g12 * r1) / det
    return a, b


def lsq_fit(raw: RawSeries, lam: float, alpha: float = 0.0) -> StructuralParams:
    """Least squares on x0(k) = -a z(k) + b z(k)^alpha, k = 2..fit_len."""
    if alpha == 1.0:
        raise ParameterDomainError("power index alpha = 1 is excluded")
    z = mean_sequence(ago(raw), lam).values
    y = raw.fit_values[1:]
    a, b = _solve_weighted_lsq(z, y, alpha, [1.0] * len(z))
    return StructuralParams(a=a, b=b, alpha=alpha, lam=lam)


@dataclass(frozen=True)
class NormFitResult:
    params: StructuralParams
    objective: float
    converged: bool


def norm_fit(
    raw: RawSeries,
    lam: float,
    alpha: float,
    obj: ResidualObjective,
    init: StructuralParams | None = None,
) -> NormFitResult:
    """Minimize the p-norm residual objective over (a, b) at fixed lam.

    p = 2 is solved in closed form (weighted least squares when relative);
    p in {1, inf} by downhill simplex started from the p = 2 solution.
    """
    if init is None:
        init = lsq_fit(raw, lam, alpha)

    if obj.p == 2.0:
        if not obj.relative:
            params = lsq_fit(raw, lam, alpha)
        else:
            z = mean_sequence(ago(raw), lam).values
            y = raw.fit_values[1:]
            w = [1.0 / yk for yk in y]
            a, b = _solve_weighted_lsq(z, y, alpha, w)
            params = StructuralParams(a=a, b=b, alpha=alpha, lam=lam)
        return NormFitResult(params, objective_value(raw, params, obj), True)

    def fun(ab):
        try:
            sp = StructuralParams(a=ab[0], b=ab[1], alpha=alpha, lam=lam)
        except ParameterDomainError:
            return math.inf
        return objective_value(raw, sp, obj)

    x0 = (init.a, init.b)
    f0 = fun(x0)
    best, fbest, converged = nelder_mead(fun, x0)
    if fbest > f0:
        best, fbest = list(x0), f0
    params = StructuralParams(a=best[0], b=best[1], alpha=alpha, lam=lam)
    return NormFitResult(params, fbest, converged)


def lsq_fit_lambda_closed(raw: RawSeries, lam: float) -> StructuralParams:
    """Closed-form normal-equation solve for the alpha = 0 model.

    Uses the explicit 2x2 inverse of the Gram system in (||z||^2, e'z, m);
    algebraically identical to lsq_fit(raw, lam, alpha=0).
    """
    z = mean_sequence(ago(raw), lam).values
    y = raw.fit_values[1:]
    m = float(len(z))
    zz = sum(v * v for v in z)
    ez = sum(z)
    zy = sum(v * w for v, w in zip(z, y))
    ey = sum(y)
    det = zz * m - ez * ez
    norm_inf = max(zz + ez, ez + m)
    if abs(det) < _DET_GUARD * (1.0 + norm_inf):
        raise DegenerateDesignError("background sequence proportional to ones")
    a = (-m * zy + ez * ey) / det
    b = (-zy * ez + zz * ey) / det
    return StructuralParams(a=a, b=b, alpha=0.0, lam=lam)
