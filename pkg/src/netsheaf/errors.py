"""Exception hierarchy shared by all netsheaf modules.

The CLI maps these onto its exit-code contract: input problems exit 1,
failed requirements/validations exit 2, internal-consistency traps exit 3.
"""

from __future__ import annotations


class NetsheafError(Exception):
    """Base class for all errors raised by this package."""


class InputError(NetsheafError):
    """Malformed or incompatible input (ambient mismatch, bad schema, ...)."""


class PreconditionError(InputError):
    """An operation was called outside its stated precondition."""


class EngineError(InputError):
    """The requested operation is not available for this algebra engine."""


class SizeGuardError(NetsheafError):
    """A resource guard (Bell bound, matrix dimension bound) was exceeded."""

    def __init__(self, message: str, bound: int, requested: int):
        super().__init__(message)
        self.bound = bound
        self.requested = requested


class InternalConsistencyError(NetsheafError):
    """Two independent decision routes disagreed: a bug trap, never user error.

    Carries a ``dump`` with everything known at the point of failure.
    """

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}
