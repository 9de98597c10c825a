class AlgebraError(Exception):
    """Base class for every error raised by the algebra engine."""


class FieldMismatchError(AlgebraError):
    pass


class DivisionByZeroError(AlgebraError):
    pass


class CharacteristicError(AlgebraError):
    pass


class RingMismatchError(AlgebraError):
    pass


class UnknownVariableError(AlgebraError):
    pass


class PolynomialSyntaxError(AlgebraError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class OrderKindError(AlgebraError):
    pass


class UnitIdealError(AlgebraError):
    pass


class NotMonomialError(AlgebraError):
    pass


class NotHomogeneousError(AlgebraError):
    pass


class DegreeShapeError(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    pass


class MoraStepLimitError(AlgebraError):
    pass


class ClaimTimeout(AlgebraError):
    pass


class IdealFileError(AlgebraError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
