"""Exception hierarchy shared by all ixcalc modules."""

from __future__ import annotations


class IxError(Exception):
    """Base class for every error raised by ixcalc."""


class SpaceMismatch(IxError, ValueError):
    """Operands live on different state spaces."""


class NotHomogeneous(IxError, ValueError):
    """An operation needing S -> S structure received S -> S'."""


class SizeCapExceeded(IxError):
    """An enumeration (dual, seq, intersection, localize) grew past its cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"size cap exceeded: {what} needs {size} > {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NotCovered(IxError):
    """No client program exists: the start state is outside the cover."""

    def __init__(self, state: str):
        super().__init__(f"state {state!r} is not covered by the goal")
        self.state = state


class MalformedProgram(IxError, ValueError):
    """A client tree does not fit the structure it is run on."""


class ContractViolation(IxError):
    """A runtime precondition of execution failed."""


class MissingWitness(IxError):
    """A certificate lacks an entry needed during cross-interface execution."""


class ModelError(IxError, ValueError):
    """Model-file parse or resolution failure, with a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
