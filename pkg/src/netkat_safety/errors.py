"""Exception hierarchy shared by the parser, validator and evaluator."""

from __future__ import annotations

from dataclasses import dataclass


class NetKATError(Exception):
    """Base class. ``section`` names the spec-file section an error came from."""

    section = None

    def with_section(self, section: str) -> "NetKATError":
        self.section = section
        return self

    def __str__(self):
        msg = self.describe()
        if self.section:
            return f"[{self.section}] {msg}"
        return msg

    def describe(self) -> str:
        return super().__str__()


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"bad span {self}")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(NetKATError):
    def __init__(self, message: str, span: SourceSpan | None = None, section: str | None = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.section = section

    def describe(self):
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class NotHbH(NetKATError):
    def __init__(self, index: int, reason: str):
        super().__init__(index, reason)
        self.index = index
        self.reason = reason

    def describe(self):
        return f"policy summand {self.index} is not hop-by-hop: {self.reason}"


class NotTopology(NetKATError):
    def __init__(self, index: int, reason: str):
        super().__init__(index, reason)
        self.index = index
        self.reason = reason

    def describe(self):
        return f"topology summand {self.index} is not a link: {self.reason}"


class NotInOut(NetKATError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason

    def describe(self):
        return f"not a sum of test sequences: {self.reason}"


class DomainError(NetKATError):
    def __init__(self, field: str, value: int):
        super().__init__(field, value)
        self.field = field
        self.value = value

    def describe(self):
        return f"value {self.value} is not in the declared domain of field {self.field!r}"


class UndeclaredField(NetKATError):
    def __init__(self, field: str):
        super().__init__(field)
        self.field = field

    def describe(self):
        return f"field {self.field!r} is not declared"


class DomainViolation(DomainError):
    """An assignment produced a packet outside the declared domains."""


class UnboundedStar(NetKATError):
    def describe(self):
        return "star over a policy containing dup needs an explicit star_bound"


class UnsupportedAtom(NetKATError):
    def __init__(self, node):
        super().__init__(node)
        self.node = node

    def describe(self):
        return f"cannot distribute {type(self.node).__name__} into words"


class WordBudgetExceeded(NetKATError):
    def __init__(self, budget: int):
        super().__init__(budget)
        self.budget = budget

    def describe(self):
        return f"word expansion exceeded the budget of {self.budget} words"
