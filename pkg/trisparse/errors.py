"""Exception hierarchy shared by every trisparse module."""


class TrisparseError(ValueError):
    """Base class for all library errors."""


class ParseError(TrisparseError):
    """Malformed input document."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ''
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else '') + ': '
        super().__init__(where + message)


class NotClosedError(TrisparseError):
    """Input triangulation is not a closed 3-manifold."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(f"not closed: {diagnostic}")


class NonOrientableError(TrisparseError):
    """Orientation constraints contradict each other."""


class DisconnectedError(TrisparseError):
    """Operation needs a connected triangulation."""


class ProvenanceError(TrisparseError):
    """Object was not derived from the triangulation it is used with."""


class DecompositionError(TrisparseError):
    """Tree decomposition does not fit the graph or trace it is used with."""


class SearchSpaceError(TrisparseError):
    """Brute-force search exceeded its budget."""


class EvaluationError(TrisparseError):
    """Tensor network cannot be evaluated as requested."""


class HopfAlgebraError(TrisparseError):
    """Structure tensors do not satisfy the Hopf algebra axioms."""


class VerificationError(TrisparseError):
    """Cross-validation between independent computations failed."""

    def __init__(self, message, diffs=None):
        self.diffs = list(diffs or [])
        super().__init__(message)
