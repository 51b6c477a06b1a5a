"""Sequence operators: accumulation, inverse accumulation, weighted mean sequence."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, ParameterDomainError

MIN_POINTS = 4


@dataclass(frozen=True)
class RawSeries:
    """Strictly positive observation sequence with a fit/holdout split.

    ``values[:fit_len]`` is used for model construction; the remainder is
    holdout for forecast comparison.
    """

    values: tuple[float, ...]
    fit_len: int

    def __init__(self, values: Sequence[float], fit_len: int | None = None):
        vals = tuple(float(v) for v in values)
        if len(vals) < MIN_POINTS:
            raise InputError(
                f"need at least {MIN_POINTS} observations, got {len(vals)}"
            )
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise InputError(f"non-finite value at position {i + 1}: {v}")
            if v <= 0.0:
                raise InputError(f"nonpositive value at position {i + 1}: {v}")
        if fit_len is None:
            fit_len = len(vals)
        fit_len = int(fit_len)
        if not MIN_POINTS <= fit_len <= len(vals):
            raise InputError(
                f"fit_len must be in [{MIN_POINTS}, {len(vals)}], got {fit_len}"
            )
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "fit_len", fit_len)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def fit_values(self) -> tuple[float, ...]:
        return self.values[: self.fit_len]

    @property
    def holdout_values(self) -> tuple[float, ...]:
        return self.values[self.fit_len :]


@dataclass(frozen=True)
class AgoSeries:
    """First-order accumulated sequence; strictly increasing by construction."""

    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class MeanSeries:
    """Weighted consecutive-neighbor means z(k), k = 2..n (length n - 1)."""

    lam: float
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)


def ago(raw: RawSeries) -> AgoSeries:
    """Accumulate the first ``fit_len`` raw points into running sums."""
    out = []
    total = 0.0
    for v in raw.fit_values:
        total += v
        out.append(total)
    return AgoSeries(tuple(out))


def iago(acc: AgoSeries | Sequence[float]) -> list[float]:
    """First differences with the first element preserved; inverse of ago."""
    vals = acc.values if isinstance(acc, AgoSeries) else tuple(acc)
    if not vals:
        return []
    out = [vals[0]]
    for k in range(1, len(vals)):
        out.append(vals[k] - vals[k - 1])
    return out


def mean_sequence(acc: AgoSeries, lam: float) -> MeanSeries:
    """z(k) = lam * x1(k) + (1 - lam) * x1(k-1) for k = 2..n."""
    if not 0.0 <= lam <= 1.0:
        raise ParameterDomainError(f"mean value parameter must be in [0, 1], got {lam}")
    x1 = acc.values
    if len(x1) < 2:
        raise InputError("mean sequence needs at least two accumulated points")
    z = tuple(lam * x1[k] + (1.0 - lam) * x1[k - 1] for k in range(1, len(x1)))
    return MeanSeries(lam=lam, values=z)
