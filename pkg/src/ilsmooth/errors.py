"""Error types shared across the package.

Three failure families, matching the CLI exit codes: bad parameters or
dimensions raise ValueError (exit 1), unreadable or malformed image files
raise ImageFormatError (an OSError, exit 2), and numerical breakdown mid
computation raises NumericalError (exit 3).
"""


class ImageFormatError(OSError):
    """An image file could not be decoded or encoded in a supported format."""


class NumericalError(ArithmeticError):
    """The computation produced non-finite values or failed to converge."""
