# errors.py
"""
Exceptions raised by the analysis pipeline.

The CLI maps them onto exit codes: 2 for invalid input, 3 for unsupported
scale, 4 for inconclusive numerics.
"""


class PolynomialSyntaxError(ValueError):
    """
    Raised when polynomial text does not follow the term grammar.

    Attributes:
        position (int): 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NegativeExponentError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class SpecFileError(ValueError):
    """Raised when an analysis spec file cannot be read or has malformed values."""


class InputValidationError(ValueError):
    """
    Raised when (S, blocks, alphas) violate the standing hypotheses.

    Attributes:
        report: The ValidationReport listing every violated rule.
    """

    def __init__(self, report):
        super().__init__("; ".join(report.failures) or "invalid input")
        self.report = report


class NotAFaceError(ValueError):
    pass


class ExactModeUnavailableError(ValueError):
    pass


class UnsupportedScaleError(ValueError):
    pass


class BudgetExceededError(ValueError):
    pass


class InconclusiveNumericsError(RuntimeError):
    """
    Raised when a numeric oracle cannot produce a trustworthy answer.

    Attributes:
        payload: Whatever partial result was computed (a fit, a table), so the
            caller can still report it.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload
