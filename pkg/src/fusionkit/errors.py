"""Exception hierarchy shared by all fusionkit modules."""


class FusionKitError(Exception):
    """Base class for every error raised by fusionkit."""


class InvalidSignatureError(FusionKitError, ValueError):
    """A signature is not weakly decreasing, or not in the required form."""


class DimensionError(FusionKitError, ValueError):
    """Vector or matrix shapes do not match."""


class ArgumentError(FusionKitError, ValueError):
    """An argument is outside the allowed range."""


class PermissibilityError(FusionKitError, ValueError):
    """A signature violates the level bound f_1 - f_N <= level."""


class InternalConsistencyError(FusionKitError, RuntimeError):
    """An invariant that must always hold was violated (indicates a bug)."""


class NumericalError(FusionKitError, ArithmeticError):
    """A numerical routine failed to reach its accuracy target."""


class NumericalConditioningError(NumericalError):
    """A linear solve was too ill-conditioned to give a trustworthy answer."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class SingularPointError(NumericalError):
    """Evaluation at a point where a defining determinant vanishes."""


class DomainError(FusionKitError, ValueError):
    """Input lies outside the domain of the function."""


class PoleError(DomainError):
    """Evaluation at a pole."""


class BranchError(DomainError):
    """Evaluation on a branch cut."""


class DegenerateSpectrumError(NumericalError):
    """Eigenvalues are too close to be separated reliably."""


class IntegrationError(NumericalError):
    """ODE integration failed (step size underflow, usually near a singularity)."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ValidationError(FusionKitError, ValueError):
    """A transport problem violates the general-position hypotheses."""
