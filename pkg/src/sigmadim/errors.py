"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SigmaDimError(Exception):
    exit_code = 4


class InputError(SigmaDimError, ValueError):
    """Malformed input: bad JSON, schema violations, unparsable expressions."""

    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class DimensionMismatch(InputError):
    pass


class FamilyViolation(SigmaDimError, ValueError):
    exit_code = 2


class ComputationGuard(SigmaDimError, RuntimeError):
    """A computation refused to continue (blow-up guard, inconclusive search)."""

    exit_code = 3


class OracleInconclusive(ComputationGuard):
    pass


class IndicatorUnresolved(ComputationGuard):
    pass


class FitError(ComputationGuard, ArithmeticError):
    pass


class AxiomViolation(SigmaDimError, ValueError):
    """An explicit schedule breaks the chain axioms at some level."""

    exit_code = 1

    def __init__(self, message, level=None, containment=None):
        self.level = level
        self.containment = containment
        super().__init__(message)


class InvariantFailure(SigmaDimError, AssertionError):
    exit_code = 4
