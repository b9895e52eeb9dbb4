"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SclatError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class IllFormedInputError(SclatError, ValueError):
    kind = "ill-formed-input"


class BaseMismatchError(SclatError, ValueError):
    kind = "base-mismatch"


class IngestionError(SclatError, ValueError):
    """Raised when explicit operation tables fail a lattice law."""

    kind = "ingestion"

    def __init__(self, law: str, detail: str = ""):
        self.law = law
        super().__init__(f"{law} fails{': ' + detail if detail else ''}")


class ArgumentError(SclatError, ValueError):
    kind = "argument"


class PreconditionError(ArgumentError):
    kind = "precondition"


class NotPrimitiveError(ArgumentError):
    """A tuple offered as a primitive pair fails one of the P-conditions."""

    kind = "not-primitive"

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"{condition} fails{': ' + detail if detail else ''}")


class InvariantViolation(SclatError, AssertionError):
    """An internal invariant asserted by a construction did not hold."""

    kind = "invariant"


class ParseError(SclatError, ValueError):
    kind = "syntax"

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class SemanticError(SclatError, ValueError):
    kind = "semantic"


class RefusalError(SclatError, ValueError):
    kind = "refusal"
