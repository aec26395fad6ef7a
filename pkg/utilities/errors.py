"""
Exception hierarchy shared by every coulombkit module.

The command line maps these onto exit statuses: validation, usage and
precondition problems exit with 2; failed checks exit with 1.
"""


class CoulombKitError(Exception):
    """Base class for all toolkit errors."""


class TheoryValidationError(CoulombKitError):
    """A theory document is malformed or violates a named invariant."""

    def __init__(self, rule: str, message: str):
        self.rule = rule
        super().__init__(f"[{rule}] {message}")


class BudgetExceededError(CoulombKitError):
    """An enumeration would exceed the configured budget."""


class DimensionLimitError(CoulombKitError):
    """The reduced charge space is larger than the chamber machinery allows."""


class PreconditionError(CoulombKitError):
    """An operation was called outside its documented domain."""
