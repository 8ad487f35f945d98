"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: DomainError -> 1, ResourceLimitError -> 2.
"""


class DomainError(ValueError):
    """An input object violates a mathematical precondition."""


class MatroidError(DomainError):
    pass


class PresentationError(DomainError):
    """Malformed pasture presentation; carries the 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NotAHomomorphism(DomainError):
    """A proposed map fails a relation of its source."""

    def __init__(self, message, relation=None):
        self.relation = relation
        super().__init__(message)


class FusionInconclusive(DomainError):
    """Bounded nullset search neither proved nor refuted membership."""

    def __init__(self, message, relation=None):
        self.relation = relation
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A configured enumeration cap was exceeded."""

    def __init__(self, message, cap=None):
        self.cap = cap
        super().__init__(message)
