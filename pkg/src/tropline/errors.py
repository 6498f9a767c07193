"""Exception hierarchy.

Every domain error carries a stable ``code`` so the CLI can report it as
structured JSON.
"""

from __future__ import annotations


class TroplineError(Exception):
    code = "TroplineError"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class DivisionByZero(TroplineError, ZeroDivisionError):
    code = "DivisionByZero"


class NotInvertible(TroplineError):
    code = "NotInvertible"


class ContextMismatch(TroplineError):
    code = "ContextMismatch"


class SingularSystem(TroplineError):
    code = "SingularSystem"


class ZeroPolynomial(TroplineError):
    code = "ZeroPolynomial"


class DegenerateSupport(TroplineError):
    code = "DegenerateSupport"


class DimensionMismatch(TroplineError):
    code = "DimensionMismatch"


class IndexOutOfRange(TroplineError, IndexError):
    code = "IndexOutOfRange"


class RankDeficient(TroplineError):
    code = "RankDeficient"


class CancellationRisk(TroplineError):
    code = "CancellationRisk"


class IdenticalSubstitutions(TroplineError):
    code = "IdenticalSubstitutions"


class EqualPoints(TroplineError):
    code = "EqualPoints"


class RetryLimitExceeded(TroplineError):
    code = "RetryLimitExceeded"

    def __init__(self, message: str, *, last_failure: str | None = None, pair=None):
        super().__init__(message)
        self.last_failure = last_failure
        self.pair = pair

    def to_json(self) -> dict:
        out = super().to_json()
        out["last_failure"] = self.last_failure
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


class IncidenceCheckFailed(TroplineError):
    code = "IncidenceCheckFailed"


class EmptyScene(TroplineError):
    code = "EmptyScene"


class ParseError(TroplineError, ValueError):
    code = "ParseError"

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column

    def to_json(self) -> dict:
        out = super().to_json()
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        return out


class ValidationError(TroplineError, ValueError):
    code = "ValidationError"
