"""Exception hierarchy shared by every flowext module."""


class FlowExtError(Exception):
    """Base class for all errors raised by flowext."""


class PreconditionError(FlowExtError, ValueError):
    """An operation was called on input that violates its contract."""


class ResourceLimitError(FlowExtError):
    """An exhaustive computation would exceed its configured budget.

    Exhaustive routines raise this instead of silently truncating.
    """


class HypothesisError(PreconditionError):
    """Hypotheses of an extension theorem are not met; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalConsistencyError(FlowExtError, AssertionError):
    """A structure guaranteed by a lemma is missing.

    This always indicates an implementation bug, never a valid outcome.
    """


class ParseError(FlowExtError, ValueError):
    def __init__(self, message, line=None, source=None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.source = source
