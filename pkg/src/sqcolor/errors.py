"""Exception types shared across the package."""


class SqColorError(Exception):
    """Base class for all package errors."""


class CapExceeded(SqColorError):
    pass


class InvalidRotation(SqColorError):
    pass


class Disconnected(SqColorError):
    pass


class BadParity(SqColorError):
    pass


class NotPrime(SqColorError):
    pass


class TooLarge(SqColorError):
    """Input exceeds the hard size guard of an exponential solver."""


class PreconditionViolated(SqColorError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesesTooTight(SqColorError):
    pass


class InternalPigeonholeFailure(SqColorError):
    """Raised when a step that the counting argument guarantees fails anyway."""


class AdjacentSuppressible(SqColorError):
    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class UnclassifiableEdge(SqColorError):
    def __init__(self, message, edge_id=None, path=None):
        super().__init__(message)
        self.edge_id = edge_id
        self.path = path


class FormatError(SqColorError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
