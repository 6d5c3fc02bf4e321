"""Exception types raised across the package."""


class CentraxError(Exception):
    """Base class for all library errors."""


class ValidationError(CentraxError, ValueError):
    """Malformed algebra, congruence, homomorphism or formula data."""


class HomomorphismError(ValidationError):
    """A map fails to preserve an operation or a designated constant.

    ``witness`` is ``(symbol, args)`` for an operation violation and
    ``("zero", i)`` / ``("one", i)`` for a constant violation.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(CentraxError):
    """A configured size cap was exceeded."""


class InvalidSystem(CentraxError, ValueError):
    """A congruence system violates (x_i, x_j) in theta_i v theta_j."""


class CentralityError(CentraxError):
    """Central-element machinery cannot run, or an argument is not central."""


class WitnessError(CentraxError):
    """A Maltsev witness cannot be produced."""


class PremiseError(CentraxError):
    """The evidence a construction relies on does not hold."""
