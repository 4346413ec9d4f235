"""Exception hierarchy shared by all modules."""


class ABCError(Exception):
    """Base class for every error raised by this package."""


class TreeError(ABCError, ValueError):
    """An edge list or tree violates the tree invariants."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CycleDetected(TreeError):
    pass


class Disconnected(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class BadToken(TreeError):
    pass


class EmptyTree(TreeError):
    pass


class DomainError(ABCError, ValueError):
    """An argument lies outside the domain of a formula."""


class InfeasibleShape(ABCError, ValueError):
    """A candidate shape violates its family's constraint system."""


class OverlappingSubtrees(ABCError, ValueError):
    pass


class NotBothRoots(ABCError, ValueError):
    pass


class BranchesNotSiblings(ABCError, ValueError):
    pass


class OrderGapTooSmall(ABCError, ValueError):
    pass


class OutOfValidatedRange(ABCError, ValueError):
    """The leaf count lies below the range where the closed forms are established."""


class LimitExceeded(ABCError, ValueError):
    """Exhaustive enumeration was requested beyond its configured bound."""
