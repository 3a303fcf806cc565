class UsageError(ValueError):
    """Invalid argument: unsupported dimension, unknown name, bad parameter."""


class PrecisionError(ArithmeticError):
    """A numerical tail could not be certified below the requested tolerance."""


class BudgetError(RuntimeError):
    """Enumeration would exceed its node budget; partial results are refused."""


class ConversionError(ValueError):
    """A theta polynomial is not expressible in the requested basis."""


class ConfigError(ValueError):
    """Inconsistent wiretap configuration."""
