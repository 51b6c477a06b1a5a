"""Integration constant c and initial-condition weight beta.

The fitted level at time t is (c e^{-(1-alpha) a t} + b/a)^{1/(1-alpha)};
c is fixed either from a weighted blend of the first and last accumulated
points (weight beta) or by minimizing a level-error objective.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ._optim import bracket_minimum, golden_section
from .errors import (
    DegenerateInitialConditionError,
    OptimizationDomainError,
    ResponseDomainError,
)
from .metrics import level_objective
from .params import StructuralParams
from .series import AgoSeries

_INT_EPS = 1e-9

POLICIES = ("beta-fixed", "c-least-squares", "c-minimize-f1", "c-minimize-f2")


def power_curve(a: float, b: float, alpha: float, c: float, t: float) -> float:
    """General solution level: (c e^{-(1-alpha) a t} + b/a)^{1/(1-alpha)}."""
    base = c * math.exp(-(1.0 - alpha) * a * t) + b / a
    q = 1.0 / (1.0 - alpha)
    qr = round(q)
    if abs(q - qr) < _INT_EPS:
        if qr < 0 and base == 0.0:
            raise ResponseDomainError(f"response pole at t={t}", t=t)
        return base**qr
    if base <= 0.0:
        raise ResponseDomainError(
            f"nonpositive base {base} with fractional exponent at t={t}", t=t
        )
    return base**q


@dataclass(frozen=True)
class InitCondition:
    """Resolved integration constant with its equivalent blend weight.

    ``beta`` may fall outside [0, 1] when back-computed from an optimized c;
    it is reported unclamped with ``beta_in_range`` flagging the excursion,
    since predictions use c directly.
    """

    c: float
    beta: float
    policy: str
    beta_in_range: bool = True

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown initial-condition policy {self.policy!r}")
        object.__setattr__(self, "beta_in_range", 0.0 <= self.beta <= 1.0)


def _anchors(sp: StructuralParams, acc: AgoSeries):
    """Exponential and level anchors at t = 1 and t = n."""
    n = len(acc)
    q = 1.0 - sp.alpha
    e1 = math.exp(-q * sp.a)
    en = math.exp(-q * sp.a * n)
    x1, xn = acc.values[0], acc.values[-1]
    if (x1 <= 0.0 or xn <= 0.0) and abs(q - round(q)) >= _INT_EPS:
        raise ResponseDomainError("accumulated anchors must be positive")
    p1 = x1**q
    pn = xn**q
    return e1, en, p1, pn


def c_from_beta(beta: float, sp: StructuralParams, acc: AgoSeries) -> float:
    """Constant fixed by blending the first and last accumulated points."""
    e1, en, p1, pn = _anchors(sp, acc)
    denom = beta * e1 + (1.0 - beta) * en
    if abs(denom) < 1e-300 or not math.isfinite(denom):
        raise DegenerateInitialConditionError("vanishing initial-condition denominator")
    return (beta * p1 + (1.0 - beta) * pn - sp.b / sp.a) / denom


def beta_from_c(c: float, sp: StructuralParams, acc: AgoSeries) -> float:
    """Unique blend weight consistent with a given constant c."""
    e1, en, p1, pn = _anchors(sp, acc)
    coeff = c * (e1 - en) - (p1 - pn)
    if abs(coeff) < 1e-300 or not math.isfinite(coeff):
        raise DegenerateInitialConditionError(
            "first and last anchors are indistinguishable"
        )
    return (pn - sp.b / sp.a - c * en) / coeff


def c_least_squares_gm(sp: StructuralParams, acc: AgoSeries) -> float:
    """Closed-form minimizer of the squared level error for the alpha = 0 model."""
    if sp.alpha != 0.0:
        raise ValueError("closed-form constant is for alpha = 0 only")
    s_ee = 0.0
    s_re = 0.0
    ba = sp.b / sp.a
    for k, x1k in enumerate(acc.values, start=1):
        ek = math.exp(-sp.a * k)
        s_ee += ek * ek
        s_re += (ba - x1k) * ek
    return -s_re / s_ee


def _level_objective_of_c(
    c: float, sp: StructuralParams, acc: AgoSeries, kind: str
) -> float:
    try:
        pred = [
            power_curve(sp.a, sp.b, sp.alpha, c, k)
            for k in range(1, len(acc) + 1)
        ]
    except ResponseDomainError:
        return math.inf
    return level_objective(pred, acc.values, kind)


def c_minimize(sp: StructuralParams, acc: AgoSeries, objective: str = "f2") -> float:
    """Golden-section minimization of the f1/f2 level objective over c."""
    if objective not in ("f1", "f2"):
        raise ValueError(f"unknown objective {objective!r}")
    c0 = c_from_beta(0.5, sp, acc)

    def fun(c):
        return _level_objective_of_c(c, sp, acc, objective)

    if not math.isfinite(fun(c0)):
        raise OptimizationDomainError("level objective not finite at midpoint constant")
    lo, hi = bracket_minimum(fun, c0)
    c_star, _ = golden_section(fun, lo, hi, tol=1e-12 * (1.0 + abs(c0)), max_iter=200)
    return c_star


def resolve(
    policy: str,
    sp: StructuralParams,
    acc: AgoSeries,
    beta: float = 1.0,
) -> InitCondition:
    """Apply an initial-condition policy and package the (c, beta) pair."""
    if policy == "beta-fixed":
        c = c_from_beta(beta, sp, acc)
        return InitCondition(c=c, beta=beta, policy=policy)
    if policy == "c-least-squares":
        c = c_least_squares_gm(sp, acc)
    elif policy == "c-minimize-f1":
        c = c_minimize(sp, acc, "f1")
    elif policy == "c-minimize-f2":
        c = c_minimize(sp, acc, "f2")
    else:
        raise ValueError(f"unknown initial-condition policy {policy!r}")
    b = beta_from_c(c, sp, acc)
    ic = InitCondition(c=c, beta=b, policy=policy)
    if not ic.beta_in_range:
        warnings.warn(
            f"optimal initial condition implies beta={b:.6g} outside [0, 1]",
            RuntimeWarning,
            stacklevel=2,
        )
    return ic
