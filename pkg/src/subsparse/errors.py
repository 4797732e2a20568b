"""Typed errors.

RefusalError covers everything the CLI reports as an algorithmic refusal
(exit code 3): enumeration thresholds exceeded, unmet preconditions,
balancer non-convergence, ambiguous decodes.  FormatError covers malformed
input files (exit code 1, like other usage errors).
"""


class RefusalError(Exception):
    """The requested computation is refused rather than approximated."""


class ThresholdExceeded(RefusalError):
    """An exact enumeration would exceed the configured size threshold."""


class PreconditionError(RefusalError):
    """A documented precondition of the operation does not hold."""


class InfiniteSpreadError(RefusalError):
    """An edge has infinite spread; strength-based sampling does not apply."""


class BalancerError(RefusalError):
    """The clique-weight balancer failed to certify its contract."""

    def __init__(self, message, assignment=None, worst_ratio=None):
        super().__init__(message)
        self.assignment = assignment
        self.worst_ratio = worst_ratio


class DecodeFailure(RefusalError):
    """A decoder landed in the ambiguous zone between its two thresholds."""


class FormatError(ValueError):
    """An input file does not conform to the documented JSON format."""
