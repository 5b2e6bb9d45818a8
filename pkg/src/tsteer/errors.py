"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class InvalidStateError(ValueError):
    """The input is not a valid two-qubit density matrix."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid density matrix: " + "; ".join(self.violations))


class NotTStateError(ValueError):
    """The state has non-vanishing local Bloch vectors."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature hit its order cap before reaching the target accuracy.

    The best available estimate is kept on the exception.
    """

    def __init__(self, message, estimate, estimated_error, nodes_used):
        super().__init__(message)
        self.estimate = estimate
        self.estimated_error = estimated_error
        self.nodes_used = nodes_used
