"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class TermMTError(Exception):
    exit_code = 1


class InputParseError(TermMTError, ValueError):
    """Malformed input data. ``line`` is 1-based when known."""

    exit_code = 2

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ConfigError(TermMTError, ValueError):
    exit_code = 3


class InvariantError(TermMTError, RuntimeError):
    exit_code = 4


class NotFittedError(TermMTError, AttributeError):
    """Raised when an estimator is used before ``fit``."""
