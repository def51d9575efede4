"""Exception types shared across the package.

The CLI maps these onto its exit codes: ConfigError -> 2,
DomainError (and subclasses) -> 3, GridTooLargeError -> 4.
"""


class ConfigError(ValueError):
    """Invalid configuration or flag combination."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class UndefinedExponentError(DomainError):
    """Critical exponent requested for a finite radius list."""


class NoRootError(DomainError):
    """Tail cover cost never crosses 1; no exponent root exists."""


class GridTooLargeError(ConfigError):
    """Requested grid exceeds the cell-count ceiling."""


class DepthExhaustedError(ValueError):
    """A finite symbol prefix was queried beyond its stored depth."""
