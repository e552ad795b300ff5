"""Exception classes shared across the package.

The CLI maps these onto distinct exit codes, so raising the right class
matters for scripted callers.
"""


class CredRankError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CredRankError):
    """Invalid configuration: bad tunables, weight simplex violations, etc."""


class InputError(CredRankError):
    """Invalid or missing input data (files, rankings, labels, queries)."""


class InvariantError(CredRankError):
    """An internal contract was violated; indicates a bug or corrupt state."""
