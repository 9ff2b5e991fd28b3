"""Shared exception types."""


class BudgetExceeded(RuntimeError):
    """An enumeration or linear-algebra request is beyond the configured budget.

    Budgets guard against accidental exponential blowups; they can be raised
    explicitly via function arguments (the CLI exposes the EXC_BUDGET
    environment variable as a multiplier).
    """
