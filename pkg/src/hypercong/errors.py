"""Exception types shared across the package.

Two families matter for exit codes: plain ``HypercongError`` subclasses are
caller mistakes or unavailable data, while ``InternalConsistencyError``
subclasses mean two routes that must agree did not -- those abort a sweep.
"""


class HypercongError(Exception):
    """Base class for all package-specific errors."""


class NotAUnit(HypercongError):
    """Inversion (or a unit-root construction) was asked of a multiple of p."""


class TooLarge(HypercongError):
    """A requested table or sum exceeds the configured work bounds."""


class ZeroArgument(HypercongError):
    """A multiplicative character was evaluated at 0."""


class NoUnitRoot(HypercongError):
    """The Newton polygon has no slope-0 segment."""


class MultipleUnitRoots(HypercongError):
    """The slope-0 segment has length > 1, so 'the' unit root is ambiguous."""


class OutOfTable(HypercongError):
    """A transcribed coefficient table was queried beyond its printed range."""


class InsufficientData(HypercongError):
    """Not enough power sums to pin down a symmetric completion."""


class InternalConsistencyError(HypercongError):
    """Two independent routes to the same value disagreed (implementation bug
    or precision fault) -- never a user error."""


class PrecisionExceeded(InternalConsistencyError):
    """A floating-point Gauss table failed its |g|^2 = q self-check."""


class IntegralityFailure(InternalConsistencyError):
    """A finite hypergeometric sum did not round to an integer within tolerance."""


class NonIntegral(InternalConsistencyError):
    """A point count did not solve to an integer H value."""


class MethodDisagreement(InternalConsistencyError):
    """Character-sum and point-count routes returned different H values."""


class SelfCheckFailed(InternalConsistencyError):
    """A runtime self-check (e.g. quotient coherence across levels) failed."""


class DegreeMismatch(InternalConsistencyError):
    """Power sums are inconsistent with the expected polynomial degree."""


class NonIntegralCoefficient(InternalConsistencyError):
    """Newton's identities produced a non-integer polynomial coefficient."""


class FactorMismatch(InternalConsistencyError):
    """An expected polynomial factor does not divide the assembled zeta factor."""
