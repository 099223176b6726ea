"""
Exception hierarchy.

Input problems derive from ``ValueError`` and resource or construction problems from
``RuntimeError`` so callers that only know the builtin types still catch them.
"""

from beartype.typing import Any, Optional


class GogError(Exception):
    """Base class of every error raised by gogauto."""


class InputError(GogError, ValueError):
    """Malformed word, unknown letter or an invalid graph-of-groups model."""


class SpecSyntaxError(InputError):
    """Error in a ``.gog`` spec file, located by line and column (both 1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}")


class NotLocallyFiniteError(InputError):
    """An edge subgroup has infinite index, so the Bass-Serre tree is not locally finite."""

    def __init__(self, edge: str):
        self.edge = edge
        super().__init__(f"tree not locally finite: edge subgroup of '{edge}' has infinite index")


class EmbeddingError(InputError):
    """The two embeddings of an edge group do not define an isomorphism of the images."""

    def __init__(self, message: str, counterexample: Any = None):
        self.counterexample = counterexample
        super().__init__(message)


class ParameterError(InputError):
    """A numeric parameter is out of its admissible range."""


class CapacityError(GogError, RuntimeError):
    """An enumeration exceeded its configured cap."""


class IndexNotEstablishedError(CapacityError):
    """Coset enumeration hit the cap before the index was known."""


class ConstructionError(GogError, RuntimeError):
    """A constructed object failed its own verification."""

    def __init__(self, message: str, counterexample: Optional[Any] = None):
        self.counterexample = counterexample
        if counterexample is not None:
            message = f"{message} (counterexample: {counterexample})"
        super().__init__(message)


class DepartureViolationError(ConstructionError):
    """The exact departure search found a cycle of configurations, i.e. infinitely many short-moving subwords."""
