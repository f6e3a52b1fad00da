"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class GraphError(ValueError):
    """Malformed graph input: bad vertex ids, loops, unreadable files."""


class OracleSizeError(ValueError):
    """An exact oracle was asked to run beyond its configured size limit."""


class PreconditionError(ValueError):
    """A documented precondition does not hold. ``witness`` carries evidence."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DoubleStarFound(PreconditionError):
    """The input graph contains an induced double star it was required to avoid."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed; the output cannot be trusted."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness
