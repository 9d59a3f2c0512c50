"""Exception types shared across the kernel."""


class GeometryError(ValueError):
    """Base class for geometry construction and evaluation errors."""


class DomainError(GeometryError):
    """Parameter or argument outside its legal domain."""


class FormError(GeometryError):
    """Entity is not in the form an operation requires (e.g. not Bezier)."""


class SingularityError(GeometryError):
    """Evaluation hit a point where a required derivative degenerates."""


class InfiniteRadiusError(SingularityError):
    """Osculating circle requested where curvature is numerically zero."""


class ValidationError(GeometryError):
    """Document content violates an invariant.

    ``path`` locates the offending item, e.g. ``curves[0].control[2]``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class ParseError(ValueError):
    """Malformed persisted text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class VersionError(ParseError):
    """Persisted document declares a schema newer than this library."""
