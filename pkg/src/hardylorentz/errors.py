"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


class BreakpointError(DomainError):
    """Derivative requested exactly at a segment boundary."""


class ProfileFormatError(ValueError):
    """Malformed profile description.

    ``index`` is the offending segment position, or ``None`` when the
    problem is not tied to a single segment.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DivergenceError(ArithmeticError):
    """A norm, integral or supremum is infinite.

    ``side`` names where the divergence was detected (``"zero"``,
    ``"infinity"``, ``"lhs"``, ``"rhs"``, ...).
    """

    def __init__(self, message, side=None):
        super().__init__(message)
        self.side = side
