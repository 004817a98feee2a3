"""Exception types shared by all modules."""


class BiquadError(Exception):
    pass


class NotSquarefree(BiquadError, ValueError):
    pass


class DegenerateField(BiquadError, ValueError):
    pass


class FieldMismatch(BiquadError, ValueError):
    pass


class VariantUndefined(BiquadError, ValueError):
    pass


class NoRecipe(BiquadError):
    pass


class MismatchFound(BiquadError):
    pass


class BudgetExceeded(BiquadError):
    """A bounded search hit its budget before finishing."""

    def __init__(self, message: str, examined: int = 0):
        super().__init__(message)
        self.examined = examined
