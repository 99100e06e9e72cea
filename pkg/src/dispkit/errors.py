"""Shared exception types."""


class ParseError(ValueError):
    """Malformed point CSV input. Carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(RuntimeError):
    """An exact operation would exceed its configured resource budget.

    Raised instead of silently truncating or approximating: an exact
    engine must never return an approximation.
    """

    def __init__(self, message, required=None, budget=None):
        self.required = required
        self.budget = budget
        super().__init__(message)
