"""Small deterministic optimizers used by the fitting routines.

Hand-rolled so that convergence rules and tie-breaking are pinned down
exactly; both searches are cheap for the problem sizes this package targets.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from .errors import OptimizationDomainError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi


def nelder_mead(
    f: Callable[[Sequence[float]], float],
    x0: Sequence[float],
    max_evals: int = 2000,
    rel_tol: float = 1e-10,
) -> tuple[list[float], float, bool]:
    """Downhill simplex in n dimensions.

    Initial simplex: axis steps of 10% of |coordinate|, at least 1e-4, which
    makes the search deterministic for fixed inputs. Returns
    (best point, best value, converged).
    """
    x0 = [float(v) for v in x0]
    n = len(x0)
    simplex = [list(x0)]
    for i in range(n):
        step = max(0.1 * abs(x0[i]), 1e-4)
        pt = list(x0)
        pt[i] += step
        simplex.append(pt)

    evals = 0

    def ev(pt):
        nonlocal evals
        evals += 1
        v = f(pt)
        return v if math.isfinite(v) else math.inf

    fvals = [ev(pt) for pt in simplex]

    def diameter():
        d = 0.0
        scale = 1.0
        for pt in simplex:
            for v in pt:
                scale = max(scale, abs(v))
        for i in range(1, n + 1):
            for j in range(n):
                d = max(d, abs(simplex[i][j] - simplex[0][j]))
        return d / scale

    converged = False
    while evals < max_evals:
        order = sorted(range(n + 1), key=lambda i: fvals[i])
        simplex = [simplex[i] for i in order]
        fvals = [fvals[i] for i in order]
        if diameter() < rel_tol:
            converged = True
            break
        centroid = [sum(pt[j] for pt in simplex[:-1]) / n for j in range(n)]
        worst = simplex[-1]
        refl = [centroid[j] + (centroid[j] - worst[j]) for j in range(n)]
        fr = ev(refl)
        if fr < fvals[0]:
            exp = [centroid[j] + 2.0 * (centroid[j] - worst[j]) for j in range(n)]
            fe = ev(exp)
            if fe < fr:
                simplex[-1], fvals[-1] = exp, fe
            else:
                simplex[-1], fvals[-1] = refl, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = refl, fr
        else:
            if fr < fvals[-1]:
                simplex[-1], fvals[-1] = refl, fr
            contr = [centroid[j] + 0.5 * (simplex[-1][j] - centroid[j]) for j in range(n)]
            fc = ev(contr)
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = contr, fc
            else:
                best = simplex[0]
                for i in range(1, n + 1):
                    simplex[i] = [
                        best[j] + 0.5 * (simplex[i][j] - best[j]) for j in range(n)
                    ]
                    fvals[i] = ev(simplex[i])

    ibest = min(range(n + 1), key=lambda i: fvals[i])
    return simplex[ibest], fvals[ibest], converged


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min)."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
    mid = 0.5 * (a + b)
    fm = f(mid)
    if fm < best_f:
        best_x, best_f = mid, fm
    return best_x, best_f


def bracket_minimum(
    f: Callable[[float], float], center: float, max_doublings: int = 60
) -> tuple[float, float]:
    """Expand [center - d, center + d] by doubling until f rises at both ends."""
    fc = f(center)
    if not math.isfinite(fc):
        raise OptimizationDomainError("objective not finite at bracket center")
    d = 0.5 * abs(center) if center != 0.0 else 1.0
    for _ in range(max_doublings):
        flo, fhi = f(center - d), f(center + d)
        # Non-finite ends count as increases: the minimum is inside.
        lo_up = not math.isfinite(flo) or flo > fc
        hi_up = not math.isfinite(fhi) or fhi > fc
        if lo_up and hi_up:
            return center - d, center + d
        d *= 2.0
    raise OptimizationDomainError("failed to bracket a finite minimum")
