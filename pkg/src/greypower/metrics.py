"""Error measures.

Two residual families live here under distinct names:

* equation residuals of the grey power equation itself (``objective_value``),
  used to pick the structural parameters and the mean value parameter;
* level residuals between the fitted response and the accumulated series
  (``level_objective``), used to pick the integration constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .params import ResidualObjective, StructuralParams
from .series import RawSeries, ago, mean_sequence


def relative_error(actual: float, predicted: float) -> float:
    """Signed relative error in percent: (actual - predicted) / actual * 100."""
    return (actual - predicted) / actual * 100.0


@dataclass(frozen=True)
class ErrorSummary:
    per_point: tuple[float, ...]
    mean_signed: float
    mean_absolute: float
    sse: float


def summarize(actual: Sequence[float], predicted: Sequence[float]) -> ErrorSummary:
    errs = tuple(relative_error(a, p) for a, p in zip(actual, predicted, strict=True))
    n = len(errs)
    sse = sum((a - p) ** 2 for a, p in zip(actual, predicted))
    return ErrorSummary(
        per_point=errs,
        mean_signed=sum(errs) / n,
        mean_absolute=sum(abs(e) for e in errs) / n,
        sse=sse,
    )


def vector_norm(r: Sequence[float], p: float) -> float:
    if p == 1.0:
        return sum(abs(v) for v in r)
    if p == 2.0:
        return math.sqrt(sum(v * v for v in r))
    return max(abs(v) for v in r)


def equation_residuals(
    raw: RawSeries, sp: StructuralParams, relative: bool = False
) -> list[float]:
    """Residuals x0(k) + a z(k) - b z(k)^alpha over k = 2..fit_len."""
    x0 = raw.fit_values
    z = mean_sequence(ago(raw), sp.lam).values
    out = []
    for k, zk in enumerate(z, start=1):
        r = x0[k] + sp.a * zk - sp.b * zk**sp.alpha
        if relative:
            r /= x0[k]
        out.append(r)
    return out


def objective_value(raw: RawSeries, sp: StructuralParams, obj: ResidualObjective) -> float:
    """p-norm of the (optionally relative) grey-equation residuals."""
    return vector_norm(equation_residuals(raw, sp, obj.relative), obj.p)


def level_objective(
    predicted: Sequence[float], actual: Sequence[float], kind: str = "f2"
) -> float:
    """Sum of absolute ('f1') or squared ('f2') level errors on x1."""
    if kind == "f1":
        return sum(abs(p - a) for p, a in zip(predicted, actual, strict=True))
    if kind == "f2":
        return sum((p - a) ** 2 for p, a in zip(predicted, actual, strict=True))
    raise ValueError(f"unknown level objective {kind!r}")
