"""Exception taxonomy shared across the package."""


class FlageinError(Exception):
    """Base class for all package errors."""


class ConfigurationError(FlageinError):
    """Unsupported group, malformed spec, or bad run configuration."""


class DomainError(FlageinError):
    """Operation called outside its mathematical domain."""


class ParseError(FlageinError):
    """Polynomial text that does not match the file format."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InternalError(FlageinError):
    """An internal invariant was violated; indicates a bug."""
