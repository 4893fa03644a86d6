"""Exception hierarchy shared across the package.

Data and format problems map to CLI exit code 1; configuration and
usage problems map to exit code 2.
"""


class DeepBarcodeError(Exception):
    """Base class for all package errors."""


class FormatError(DeepBarcodeError):
    """A file does not conform to its declared binary/text format."""


class DataError(DeepBarcodeError):
    """Payload values violate an invariant (non-finite, negative label, ...)."""


class DimensionError(DeepBarcodeError):
    """Shapes or lengths of two operands do not agree."""


class ConfigError(DeepBarcodeError):
    """An invalid parameter or parameter combination was requested."""
