"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed literal text. ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ContextMismatch(ValueError):
    """Operands belong to different groups."""
