"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the physical or mathematical domain."""


class NumericalError(ArithmeticError):
    """A numerical routine failed to reach its tolerance.

    ``diagnostics`` carries whatever the failing routine knows about the
    failure (interval, depth, error estimate).
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({extra})"


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge within the allowed depth."""
