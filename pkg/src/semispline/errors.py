"""Exception types shared across modules.

Every error a caller can trigger with well-formed but mathematically
unsuitable input derives from :class:`DomainError`; the CLI maps those to
exit status 1.
"""


class DomainError(ValueError):
    """Input is well formed but outside an operation's domain."""

    reason = "domain-error"


class CapacityError(DomainError):
    reason = "capacity"


class AllKnotsEqual(DomainError):
    reason = "all-knots-equal"


class TooFewKnots(DomainError):
    reason = "too-few-knots"


class RepeatedKnots(DomainError):
    reason = "repeated-knots"


class DegenerateRows(DomainError):
    """The two rows of a 2 x k system are linearly dependent."""

    reason = "degenerate-rows"


class NotUnimodular(DomainError):
    reason = "not-unimodular"


class IntervalTooNarrow(DomainError):
    reason = "interval-too-narrow"


class EmptyFactorizationSet(DomainError):
    reason = "empty-factorization-set"
