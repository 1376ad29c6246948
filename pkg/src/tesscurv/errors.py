"""Exception hierarchy shared by all modules."""


class TessError(Exception):
    """Base class for errors raised by tesscurv."""


class StructuralError(TessError, ValueError):
    """The combinatorial data does not describe a valid embedded graph."""


class ParseError(TessError, ValueError):
    """A tessellation file could not be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending record, if known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DanglingIdError(ParseError):
    """A rotation lists a neighbor id that has no vertex record."""


class AsymmetryError(ParseError):
    """Vertex ``u`` lists ``v`` as a neighbor but not vice versa."""

    def __init__(self, u, v, line=None):
        self.pair = (u, v)
        super().__init__(f"asymmetric adjacency: {u} lists {v} but {v} does not list {u}", line)


class UnsupportedInputError(TessError, TypeError):
    """The operation is not defined for this kind of tessellation."""


class NotInteriorError(TessError, ValueError):
    """A vertex or set touches the truncation boundary of a patch."""


class ConstructionError(TessError, ValueError):
    """A generator could not complete its layer-by-layer construction."""


class HypothesisError(TessError, ValueError):
    """An input does not satisfy the hypotheses an operation needs."""
