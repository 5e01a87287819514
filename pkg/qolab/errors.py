"""Exceptions raised by the analysis pipelines.

Verdicts such as "reducible" or "not a coordinate" are returned as values; the
classes below cover inputs the algorithms cannot work with.
"""


class QolabError(Exception):
    """Base class for every error raised by qolab."""


class NonMonicError(QolabError):
    pass


class DegreeError(QolabError):
    pass


class ZeroPolynomialError(QolabError):
    pass


class NotSquarefreeError(QolabError):
    pass


class NotQuasiOrdinaryError(QolabError):
    pass


class AlgebraicExtensionRequired(QolabError):
    """A coefficient step has no solution over the rationals."""


class InsufficientPrecision(QolabError):
    def __init__(self, message: str, found=None):
        super().__init__(message)
        self.found = list(found or [])


class NonUniqueMinimizer(QolabError):
    def __init__(self, message: str, witnesses=None):
        super().__init__(message)
        self.witnesses = list(witnesses or [])


class NotCharacteristicExponent(QolabError):
    pass


class DegreeInconsistency(QolabError):
    pass


class InvariantViolation(QolabError):
    pass


class ChainBlowUp(QolabError):
    pass


class ParseError(QolabError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UndeclaredVariable(ParseError):
    def __init__(self, name: str, position: int = 0):
        super().__init__(f"undeclared variable {name}", position)
        self.name = name
