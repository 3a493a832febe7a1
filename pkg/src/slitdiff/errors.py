"""Exception types shared across the package.

The split mirrors the process exit codes of the command line client:
configuration problems, data problems, and numerical failures are
distinct categories and are reported as such.
"""


class SlitDiffError(Exception):
    """Base class for all package errors."""


class ConfigError(SlitDiffError):
    """A parameter file, run configuration, or request is invalid."""


class DataError(SlitDiffError):
    """A measured dataset cannot be read or is internally inconsistent."""


class NumericalError(SlitDiffError):
    """A computation produced non-finite values or failed to converge."""
