class DzetaError(Exception):
    """Base class for every error raised by quenched_dzeta."""


class DomainError(DzetaError, ValueError):
    """An input lies outside the region where the quantity is defined."""


class ConvergenceError(DzetaError):
    """A quadrature or series failed to reach its tolerance."""


class SeriesOverflowError(ConvergenceError):
    """A series term overflowed double precision; reduce the split point a."""


class ConfigError(DzetaError):
    """A run configuration could not be loaded or resolved."""
