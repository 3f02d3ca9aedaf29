"""Exception hierarchy shared across the package."""


class NilstromError(Exception):
    """Base class for all errors raised by nilstrom."""


class BasisMismatch(NilstromError):
    pass


class NoComplexStructure(NilstromError):
    pass


class NotExactlyRepresentable(NilstromError):
    """An exact-mode computation needs an irrational quantity (e.g. a square root)."""


class NonRationalLiteral(NilstromError):
    pass


class DSLSyntaxError(NilstromError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnboundParameter(NilstromError):
    pass


class DegenerateDeformation(NilstromError):
    pass


class DomainError(NilstromError):
    pass


class NotPositiveDefinite(NilstromError):
    def __init__(self, message: str, minor_index: int | None = None, minor=None):
        super().__init__(message)
        self.minor_index = minor_index
        self.minor = minor


class NotPositive(NilstromError):
    pass


class NotHolomorphic(NilstromError):
    pass


class ConventionError(NilstromError):
    pass


class UnsupportedModel(NilstromError):
    pass
