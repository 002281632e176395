"""Domain errors raised by the engine.

Every error carries a stable ``code`` (its class name) so the CLI and the
REST service can report machine-readable failures.
"""

from __future__ import annotations


class HoportError(Exception):
    """Base class for all domain failures."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        payload = {"code": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: v for k, v in sorted(self.details.items())}
        return payload


class FormatError(HoportError):
    """A JSON document does not have the expected shape."""


# signature
class DuplicateName(HoportError):
    pass


class KindInterfaceMismatch(HoportError):
    pass


class ArityMismatch(HoportError):
    pass


class UnknownName(HoportError):
    pass


# portgraph
class UnknownLabel(HoportError):
    pass


class ClassMismatch(HoportError):
    pass


class PortOccupied(HoportError):
    pass


class PortOutOfRange(HoportError):
    pass


class SelfPort(HoportError):
    pass


class UnknownNode(HoportError):
    pass


class DuplicateNode(HoportError):
    pass


# matching
class SignatureMismatch(HoportError):
    pass


class EmptyPattern(HoportError):
    pass


class MatchTimeout(HoportError):
    pass


# oracle
class SubjectTooLarge(HoportError):
    pass


# rewriting
class IncompleteInterfaceMap(HoportError):
    pass


class TargetNotFree(HoportError):
    pass


class FreeRhsVariable(HoportError):
    pass


class LinearityOverflow(HoportError):
    pass


class StaleMorphism(HoportError):
    pass


class ReplayMismatch(HoportError):
    """Re-running a recorded derivation did not reproduce its results."""


class StepLimitReached(HoportError):
    """Raised by normalize when max_steps is exhausted before a normal form.

    Carries the partial result so callers can report how far reduction got.
    """

    def __init__(self, message: str, graph=None, derivation=None, **details):
        super().__init__(message, **details)
        self.graph = graph
        self.derivation = derivation
