"""Exception types raised by the engine."""


class KuranishiError(Exception):
    """Base class for all engine errors."""


class ParamMismatch(KuranishiError):
    pass


class NotInMaximalIdeal(KuranishiError):
    pass


class RingMismatch(KuranishiError):
    pass


class LatticeViolation(KuranishiError):
    pass


class DegreeMismatch(KuranishiError):
    pass


class UnknownIdentity(KuranishiError):
    pass


class WrongGeometry(KuranishiError):
    pass


class NotNilpotent(KuranishiError):
    pass


class NotCocycle(KuranishiError):
    pass


class NotIntegrableMod(KuranishiError):
    pass


class CocycleViolation(KuranishiError):
    pass


class NotClosed(KuranishiError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Obstructed(KuranishiError):
    """A right-hand side with nonzero harmonic part; ``witness`` holds it."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ObstructedExtension(KuranishiError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSubmanifoldDeformation(KuranishiError):
    def __init__(self, message, terms=None):
        super().__init__(message)
        self.terms = terms


class PreconditionFailed(KuranishiError):
    def __init__(self, hypothesis, witness=None):
        super().__init__(f"precondition failed: {hypothesis}")
        self.hypothesis = hypothesis
        self.witness = witness


class ParseError(KuranishiError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
        self.reason = message


class FormTypeError(KuranishiError, TypeError):
    """An expression has the wrong degree or value type."""

    def __init__(self, expected, actual):
        super().__init__(f"expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual
