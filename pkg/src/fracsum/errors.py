"""Exception hierarchy shared by every module."""


class FracsumError(Exception):
    """Base class for domain errors raised by this package."""


class SingularMatrix(FracsumError):
    pass


class BoundaryEigenvalue(FracsumError):
    """Some eigenvalue has modulus exactly one."""


class NumberSystemError(FracsumError):
    pass


class NotExpanding(NumberSystemError):
    pass


class WrongDigitCount(NumberSystemError):
    pass


class MissingZeroDigit(NumberSystemError):
    pass


class DuplicateResidue(NumberSystemError):
    def __init__(self, i: int, j: int, di, dj):
        self.i, self.j = i, j
        super().__init__(
            f"digits {i} {tuple(di)} and {j} {tuple(dj)} lie in the same residue class"
        )


class SingularAMinusI(NumberSystemError):
    pass


class ExpansionError(FracsumError):
    pass


class CycleDetected(ExpansionError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(
            "no finite representation: state cycle " + " -> ".join(str(tuple(c)) for c in self.cycle)
        )


class StepLimitExceeded(ExpansionError):
    pass


class NoAdmissibleDigit(ExpansionError):
    pass


class OutsideTileBall(ExpansionError):
    pass


class NoContractionFound(FracsumError):
    pass


class WindowOverflow(FracsumError):
    pass


class EmptyCloud(FracsumError):
    pass


class EmptyInput(FracsumError):
    pass


class ZeroDirection(FracsumError):
    pass


class DomainError(FracsumError):
    pass


class FormulaViolation(FracsumError):
    """An exact identity failed. Always a bug in this library, never bad input."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ConfigError(FracsumError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
