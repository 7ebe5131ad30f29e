"""Exception types raised by the toolkit."""


class WitnessError(Exception):
    """Base class for all toolkit errors."""


class DomainError(WitnessError, ValueError):
    """An argument lies outside the range an operation accepts."""


class DegenerateBoundError(DomainError):
    """The separable bound F is too close to zero to normalise the witness."""


class NotSaturableError(DomainError):
    """No product configuration reaches the separable bound exactly (odd N)."""


class SizeLimitError(DomainError):
    """A full Hilbert-space computation was requested beyond its size cap."""


class OptimizationError(WitnessError, RuntimeError):
    """Every starting point of an optimisation was unusable."""


class NotFoundError(WitnessError, RuntimeError):
    """A searched-for sign change or root was not bracketed."""
