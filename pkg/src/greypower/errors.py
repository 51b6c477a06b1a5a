"""Exception hierarchy. The CLI maps these onto exit codes."""


class GreyModelError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GreyModelError):
    """Bad input data: unparseable, nonpositive, or too few points."""


class ParameterDomainError(GreyModelError):
    """A user-supplied parameter is outside its valid domain."""


class DegenerateDesignError(GreyModelError):
    """The design system is (numerically) singular."""


class DegenerateInitialConditionError(GreyModelError):
    """The initial-condition equations have no usable solution."""


class OptimizationDomainError(GreyModelError):
    """A search could not find a finite-objective region."""


class ResponseDomainError(GreyModelError):
    """The time response is undefined at the requested point."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t
