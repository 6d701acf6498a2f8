"""Exception types shared across the package."""


class GraphFockError(Exception):
    """Base class for all errors raised by this package."""


class NonSymmetricError(GraphFockError):
    """Adjacency matrix is not symmetric; carries the first offending (row, col)."""

    def __init__(self, row, col):
        self.row, self.col = row, col
        super().__init__(f"adjacency not symmetric at ({row},{col})")


class NonZeroDiagonalError(GraphFockError):
    """Adjacency matrix has a nonzero diagonal entry (self-loop)."""

    def __init__(self, index):
        self.row = self.col = index
        super().__init__(f"nonzero diagonal entry at ({index},{index})")


class NonBinaryEntryError(GraphFockError):
    """Adjacency matrix has an entry other than 0 or 1."""

    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"non-binary entry {value!r} at ({row},{col})")


class BadParamsError(GraphFockError):
    """Invalid parameters for a named graph family."""


class SolverFailureError(GraphFockError):
    """The dense symmetric eigensolver did not converge."""


class SizeLimitExceededError(GraphFockError):
    """Graph is larger than the exact solver supports."""


class LetterOutOfRangeError(GraphFockError):
    """A word contains a letter outside the vertex range."""

    def __init__(self, letter, d):
        self.letter, self.d = letter, d
        super().__init__(f"letter {letter} out of range for {d} vertices")


class BasisTooLargeError(GraphFockError):
    """Trace enumeration exceeded the configured state cap."""

    def __init__(self, cap, at_length):
        self.cap, self.at_length = cap, at_length
        super().__init__(
            f"basis exceeds cap of {cap} states while enumerating length {at_length}"
        )


class NotACliqueError(GraphFockError):
    """The supplied vertex list is not a clique of the graph."""


class NotApplicableError(GraphFockError):
    """A bound variant was requested on a graph that does not qualify for it."""


class GraphFormatError(GraphFockError):
    """A graph or coefficient file failed to parse or validate."""
