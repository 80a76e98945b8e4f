"""Error types shared across the package.

Domain errors (bad arguments) raise plain ValueError; the classes here mark
failures that a caller may want to handle differently: certified numerical
tolerances that cannot be met, and resource caps/budgets that were exceeded.
The CLI maps both to exit code 3.
"""


class ToleranceError(ArithmeticError):
    """A certified error bound could not be brought below the target."""


class ResourceError(RuntimeError):
    """An enumeration cap, retry budget, or similar resource limit was hit."""
