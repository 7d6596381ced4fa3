"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigurationError exits 1,
DataFileError exits 2.
"""


class PensimError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(PensimError):
    """A scenario or parameter value is invalid.

    The message names the first failing field.
    """


class DataFileError(PensimError):
    """An input data file is missing, unparseable, or violates its schema."""
