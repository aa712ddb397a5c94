"""Exception hierarchy shared by every module of the package."""


class SkewmorphError(Exception):
    """Base class for all package errors."""


class ClosureCapError(SkewmorphError, RuntimeError):
    """A group closure grew past the configured element cap."""


class ConsistencyError(SkewmorphError, AssertionError):
    """An internal postcondition failed; this indicates a bug, not bad input."""


class NotClassifiableError(SkewmorphError, ValueError):
    """No admissible tuple reproduces the given skew-morphism."""


class OracleTimeoutError(SkewmorphError, TimeoutError):
    """The pruned search ran out of wall-clock budget before finishing.

    ``completed`` holds the top-level branches that finished and
    ``remaining`` the ones that did not, so a checkpointed run can resume.
    """

    def __init__(self, message, completed=(), remaining=(), nodes=0):
        super().__init__(message)
        self.completed = tuple(completed)
        self.remaining = tuple(remaining)
        self.nodes = nodes
