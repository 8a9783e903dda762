"""Exception types shared across the package."""


class PathsignError(Exception):
    """Base class for all package-specific errors."""


class SimplicityError(PathsignError):
    """A graph violates simplicity: self-loop, duplicate edge, or a pair
    carrying edges in both directions."""


class SizeBudgetError(PathsignError):
    """A requested construction level exceeds the vertex budget."""

    def __init__(self, n: int, vertex_count: int, budget: int):
        self.n = n
        self.vertex_count = vertex_count
        self.budget = budget
        super().__init__(
            f"level {n} has {vertex_count} vertices, over the budget of {budget}"
        )


class CyclicGraphError(PathsignError):
    """An operation requiring an acyclic digraph met a directed cycle."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"directed cycle found: {self.cycle}")


class UniquePathError(PathsignError):
    """Some ordered pair has two or more directed paths, so the sign rule
    would be ambiguous."""

    def __init__(self, pairs):
        self.pairs = tuple(pairs)
        super().__init__(
            f"{len(self.pairs)} ordered pairs have multiple paths, first: {self.pairs[0]}"
        )


class PreconditionError(PathsignError):
    """An operation's structural precondition failed; carries a witness."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class FormatError(PathsignError):
    """Malformed graph file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
