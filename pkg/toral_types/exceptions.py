class ToralTypesError(Exception):
    """Base class for every error raised by toral_types."""


class ConfigurationError(ToralTypesError):
    """An unsupported family, rank, field size or torus description."""


class ContractViolation(ToralTypesError, ValueError):
    """A precondition of an operation does not hold for its inputs."""


class ApplicabilityError(ToralTypesError):
    """A verdict was requested outside the range where it is meaningful."""


class InternalError(ToralTypesError):
    """A step bound was exceeded or two independent computations disagree."""


class CrossValidationError(InternalError):
    """The matrix-level oracle disagrees with the closed-form geometry."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
