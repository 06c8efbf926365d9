"""Exception types shared across the package."""


class RotbellError(Exception):
    """Base class for all errors raised by rotbell."""


class DomainError(RotbellError, ValueError):
    """A parameter lies outside its valid range."""


class InvalidSizeError(DomainError):
    """A party count is zero or exceeds the configured memory cap."""


class ShapeError(RotbellError, ValueError):
    """Operands have mismatched party counts or array shapes."""


class BudgetError(RotbellError):
    """A computation would exceed its configured evaluation budget."""
