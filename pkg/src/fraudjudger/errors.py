"""Exception taxonomy shared across the package.

Every error raised on purpose derives from FraudjudgerError so callers (and
the CLI) can map failures to exit codes without matching on message text.
"""


class FraudjudgerError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(FraudjudgerError, ValueError):
    """Array dimensions do not match what the operation requires."""


class InputError(FraudjudgerError, ValueError):
    """Input values are invalid (non-finite, out of range, wrong type)."""


class StateError(FraudjudgerError, RuntimeError):
    """Operation called in the wrong order (e.g. backward before forward)."""


class ModeError(FraudjudgerError, RuntimeError):
    """Operation not available for the model's mode."""


class SchemaError(FraudjudgerError, ValueError):
    """A file's header or structure does not match the expected schema."""


class RecordError(FraudjudgerError, ValueError):
    """A malformed row in an input file; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


class ConfigError(FraudjudgerError, ValueError):
    """Invalid configuration value or combination."""


class NumericError(FraudjudgerError, ArithmeticError):
    """Training or evaluation produced a non-finite quantity."""
