"""Exception types shared across the package."""


class InvariantViolation(RuntimeError):
    """A mathematically guaranteed identity failed to hold.

    This always indicates an implementation bug (or a genuine theorem
    contradiction) and is never raised for bad user input.
    """


class NotDynkinTypeA(ValueError):
    """The unit form admits no quiver realization."""


class CanonicalizationError(RuntimeError):
    """The search for a weak congruence to the canonical form failed.

    Callers normally fall back to the backtracking realizer.
    """
