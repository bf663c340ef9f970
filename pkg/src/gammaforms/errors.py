"""Exception types shared across the package."""


class GammaFormsError(Exception):
    """Base class for all package errors."""


class IntegralityViolation(GammaFormsError):
    """A certified-integer sequence produced a value with denominator != 1."""

    def __init__(self, n, family, value):
        self.n = n
        self.family = family
        self.value = value
        super().__init__(
            f"family {family!r}: value at n={n} is not an integer "
            f"(reduced denominator {value.denominator})"
        )


class LengthMismatch(GammaFormsError):
    """Two sequence tables do not cover a common index range."""


class PrecisionBudgetExceeded(GammaFormsError):
    """Working precision was insufficient for the requested evaluation."""


class InsufficientGammaPrecision(GammaFormsError):
    """A supplied constant does not carry enough certified digits."""


class NonExactDivision(GammaFormsError):
    """An exact polynomial division left a nonzero remainder."""

    def __init__(self, step, detail=""):
        self.step = step
        super().__init__(f"non-exact division at step {step!r}" + (f": {detail}" if detail else ""))


class NonIntegerP(GammaFormsError):
    """The harmonic-weighted moment sum failed to clear its denominators."""


class NonConvergence(UserWarning):
    """Successive normalized form values did not stabilize (reported, not fatal)."""
