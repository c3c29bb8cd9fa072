"""Exception types shared across the package."""


class PrimeGaugeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PrimeGaugeError, ValueError):
    """An argument lies outside an operation's stated domain."""


class UsageError(PrimeGaugeError, ValueError):
    """A request names an unknown rule, table, or output format."""


class BudgetError(PrimeGaugeError):
    """A computation would exceed the configured sieve budget."""


class RangeOverflowError(PrimeGaugeError):
    """An intermediate value would leave the signed 64-bit range."""
