"""Exception types shared across the package."""


class StripcodeError(Exception):
    """Base class for all errors raised by stripcode."""


class InvalidDimensionError(StripcodeError):
    """Grid generator called with a dimension below 2."""


class EmbeddingError(StripcodeError):
    """Rotation system is not a valid sphere embedding (twin/next/Euler)."""


class NotConnectedError(StripcodeError):
    """Operation requires a connected graph."""


class UnsupportedClassError(StripcodeError):
    """Graph falls outside the supported classification."""


class InvalidStartError(StripcodeError):
    """Start specification does not name a dart on the outer face."""


class DegenerateStripError(StripcodeError):
    """A candidate strip contains no new vertices and cannot be absorbed."""


class NoRouteError(StripcodeError):
    """Requested route endpoints are not connected in the room graph."""


class NotATreeError(StripcodeError):
    """Tree traversal applied to a graph with rooms."""


class StructureMismatchError(StripcodeError):
    """Space tree and graph disagree during traversal."""


class FormatError(StripcodeError):
    """1-d graph is malformed (bad form, inconsistent values, bad pairs)."""


class ParseError(StripcodeError):
    """Text does not parse as a .s1d document.

    Carries a position so callers can point at the offending token.
    """

    def __init__(self, message, line=None, column=None, unit_index=None):
        at = []
        if line is not None:
            at.append(f"line {line}")
        if column is not None:
            at.append(f"col {column}")
        if unit_index is not None:
            at.append(f"unit {unit_index}")
        super().__init__(message + (f" ({', '.join(at)})" if at else ""))
        self.line = line
        self.column = column
        self.unit_index = unit_index


class RestoreError(StripcodeError):
    """Decoding a 1-d document back to a plane graph failed."""
