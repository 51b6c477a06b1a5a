"""Shared parameter types for the grey power model family."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterDomainError


@dataclass(frozen=True)
class StructuralParams:
    """Structural parameters of the grey power equation.

    ``a`` is the development coefficient, ``b`` the grey input coefficient,
    ``alpha`` the power index (0 gives GM(1,1), 2 the Verhulst model) and
    ``lam`` the mean value parameter used to build the background sequence.
    """

    a: float
    b: float
    alpha: float
    lam: float

    def __post_init__(self):
        if self.alpha == 1.0:
            raise ParameterDomainError("power index alpha = 1 is excluded")
        if not 0.0 <= self.lam <= 1.0:
            raise ParameterDomainError(
                f"mean value parameter must be in [0, 1], got {self.lam}"
            )


_ALLOWED_P = (1.0, 2.0, math.inf)


@dataclass(frozen=True)
class ResidualObjective:
    """Residual norm selector: p in {1, 2, inf}; relative divides by x0(k)."""

    p: float = 2.0
    relative: bool = False

    def __post_init__(self):
        p = float(self.p)
        if p not in _ALLOWED_P:
            raise ParameterDomainError(f"norm selector must be 1, 2 or inf, got {self.p}")
        object.__setattr__(self, "p", p)
