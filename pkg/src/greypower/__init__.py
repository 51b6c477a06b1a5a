"""Grey power model forecasting for small positive series.

Implements the GM(1,1), grey Verhulst and generalized power variants with
optimized initial conditions (beta/c) and optimized structural parameters
(a, b, lambda) under 1-, 2- and inf-norm residual objectives.
"""

from .errors import (
    DegenerateDesignError,
    DegenerateInitialConditionError,
    GreyModelError,
    InputError,
    OptimizationDomainError,
    ParameterDomainError,
    ResponseDomainError,
)
from .estimation import NormFitResult, lsq_fit, lsq_fit_lambda_closed, norm_fit
from .forecaster import GreyPowerForecaster
from .initcond import (
    InitCondition,
    beta_from_c,
    c_from_beta,
    c_least_squares_gm,
    c_minimize,
)
from .metrics import ErrorSummary, objective_value, relative_error, summarize
from .optimize import FitPlan, FitResult, fit_pipeline, optimize_lambda
from .params import ResidualObjective, StructuralParams
from .response import (
    EvaluationReport,
    FittedModel,
    ReportRow,
    evaluate,
    restored,
    time_response,
    verhulst_modified_restored,
)
from .series import AgoSeries, MeanSeries, RawSeries, ago, iago, mean_sequence

__version__ = "0.1.0"

__all__ = [
    "AgoSeries",
    "DegenerateDesignError",
    "DegenerateInitialConditionError",
    "ErrorSummary",
    "EvaluationReport",
    "FitPlan",
    "FitResult",
    "FittedModel",
    "GreyModelError",
    "GreyPowerForecaster",
    "InitCondition",
    "InputError",
    "MeanSeries",
    "NormFitResult",
    "OptimizationDomainError",
    "ParameterDomainError",
    "RawSeries",
    "ReportRow",
    "ResidualObjective",
    "ResponseDomainError",
    "StructuralParams",
    "ago",
    "beta_from_c",
    "c_from_beta",
    "c_least_squares_gm",
    "c_minimize",
    "evaluate",
    "fit_pipeline",
    "iago",
    "lsq_fit",
    "lsq_fit_lambda_closed",
    "mean_sequence",
    "norm_fit",
    "objective_value",
    "optimize_lambda",
    "relative_error",
    "restored",
    "summarize",
    "time_response",
    "verhulst_modified_restored",
]
