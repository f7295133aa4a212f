"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


class TruncationError(ValueError):
    """The Fock-space cutoff is too small for the requested state."""


class DimensionMismatch(ValueError):
    """Operands live on Fock spaces of different dimension."""


class NoAnalyticForm(ValueError):
    """A state carries no provenance with a known closed form."""
