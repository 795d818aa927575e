"""
Exception hierarchy for biamalg.

Everything a caller can trigger with bad input derives from ``BiamalgError``,
which is a ``ValueError``. ``InvariantViolation`` is reserved for
post-conditions that the theory guarantees; seeing one means a library bug.
"""
from dataclasses import dataclass
from typing import Any, Optional


class BiamalgError(ValueError):
    """Base class for input and validation errors"""


class RingConstructionError(BiamalgError):
    """Malformed ring descriptor"""


class OrderCapExceeded(BiamalgError):
    def __init__(self, order: int, cap: int, what: str = "ring"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} of order {order} exceeds the order cap {cap} (set BIAMALG_MAX_ORDER to raise it)")


class RingMismatchError(BiamalgError):
    """Operands live in different rings"""


class HomomorphismError(BiamalgError):
    def __init__(self, message: str, law: Optional[str] = None, witness: Any = None):
        self.law = law
        self.witness = witness
        super().__init__(message)


class CompatibilityError(BiamalgError):
    """f^-1(b) != g^-1(c); ``witness`` is an element of A in exactly one of them"""

    def __init__(self, message: str, witness: Optional[int] = None):
        self.witness = witness
        super().__init__(message)


class InvalidPrimeError(BiamalgError):
    pass


class NotLocalError(BiamalgError):
    pass


class PolynomialError(BiamalgError):
    pass


@dataclass(frozen=True)
class Span:
    """1-based source position range of a DSL construct"""
    line: int
    column: int
    end_line: int
    end_column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class DSLError(BiamalgError):
    kind = "error"

    def __init__(self, message: str, span: Optional[Span] = None):
        self.message = message
        self.span = span
        where = f"{span}: " if span else ""
        super().__init__(f"{where}{self.kind}: {message}")


class LexError(DSLError):
    kind = "lexical error"


class ParseError(DSLError):
    kind = "parse error"

    def __init__(self, message: str, span: Optional[Span] = None, expected: tuple = ()):
        self.expected = tuple(expected)
        if expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(message, span)


class NameResolutionError(DSLError):
    kind = "name error"


class ScriptRuntimeError(DSLError):
    kind = "runtime error"


class InvariantViolation(RuntimeError):
    """A guaranteed post-condition failed"""
