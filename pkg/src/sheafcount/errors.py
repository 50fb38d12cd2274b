"""Exception types shared across the package."""


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a zero of its denominator."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed.

    Raised when two computations that must agree by theory disagree in
    practice: a localization sum that fails to be constant, sampled values
    that differ between sample points, the two closed forms of a moduli
    index coming apart, or a symmetry extension that assigns two values to
    one cell.  Any instance of this means a bug, not bad user input.
    """


class NLValidationError(ValueError):
    """An intersection-number table failed validation or parsing."""
