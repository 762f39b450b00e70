"""
Error hierarchy for the barred preferential arrangement engines.

Everything derives from ValueError so views and commands can keep catching
ValueError for bad input.
"""


class BpaError(ValueError):
    pass


class InvalidParamsError(BpaError):
    pass


class MethodNotApplicableError(BpaError):
    pass


class OrderMismatchError(BpaError):
    pass


class ZeroConstantTermError(BpaError):
    pass


class TruncationError(BpaError):
    pass


class NonIntegralError(BpaError):
    pass


class NonExactDivisionError(BpaError):
    """A rational recurrence produced a non-integer count; always a bug."""


class CertificationError(BpaError):
    """The certified enclosure of an infinite series holds no integer."""


class BudgetExceededError(BpaError):
    def __init__(self, predicted: int, max_count: int):
        self.predicted = predicted
        self.max_count = max_count
        super().__init__(
            f"Enumeration refused: {predicted} structures predicted, budget is {max_count}"
        )

    def __reduce__(self):
        return type(self), (self.predicted, self.max_count)


class EnumerationCapError(BpaError):
    pass


class StructureError(BpaError):
    pass


class BpaParseError(BpaError):
    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)

    def __reduce__(self):
        return type(self), (self.message, self.position)


class BFileError(BpaError):
    pass


class FetchError(BpaError):
    pass
