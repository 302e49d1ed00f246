"""Exception hierarchy shared by every pmsmetrics module."""

from __future__ import annotations


class MetricsError(Exception):
    """Base class for all errors raised by pmsmetrics."""


# -- document loading --------------------------------------------------------

class DocumentSyntaxError(MetricsError):
    """The document text is not well-formed JSON."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(MetricsError):
    """A field is missing, unknown, or of the wrong type."""


class RangeError(MetricsError, ValueError):
    """A value lies outside its permitted range."""


# -- rule language -----------------------------------------------------------

class RuleSyntaxError(MetricsError):
    """Base for lexing and parsing failures; carries a 1-based position."""

    def __init__(self, message: str, line: int, column: int, module: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.module = module
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}"
        if self.module:
            where = f"module {self.module!r}, {where}"
        return f"{self.message} ({where})"


class LexError(RuleSyntaxError):
    pass


class ParseError(RuleSyntaxError):
    pass


# -- metrics -----------------------------------------------------------------

class EmptyInputError(MetricsError, ValueError):
    pass


class NonpositiveWeightError(RangeError):
    pass


class ZeroTotalError(MetricsError, ZeroDivisionError):
    pass


class TooFewCandidatesError(MetricsError, ValueError):
    pass


class NonpositiveReferenceError(RangeError):
    pass


class TooFewPanelsError(MetricsError, ValueError):
    pass


class SourceReadError(MetricsError, OSError):
    """A rule-language source referenced by a module could not be read."""

    def __init__(self, module: str, path: str, reason: str):
        super().__init__(f"module {module!r}: cannot read {path}: {reason}")
        self.module = module
        self.path = path
