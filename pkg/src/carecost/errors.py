"""Exception taxonomy shared across the toolkit.

The CLI maps ConfigError to exit code 2 and DataError to exit code 3.
"""


class CarecostError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CarecostError):
    """Bad flags, unreadable config/mapping files, unknown model names."""


class DataError(CarecostError):
    """Problems with input data: missing files, absent columns, schema skew."""
