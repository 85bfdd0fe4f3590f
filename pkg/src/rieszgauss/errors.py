"""Exception hierarchy shared across the package."""


class RieszGaussError(Exception):
    """Base class for all errors raised by this package."""


class ConeMembershipError(RieszGaussError):
    """A matrix was required to lie in the open cone of positive definite
    symmetric matrices but does not (some leading principal minor is not
    strictly positive up to tolerance)."""


class NotPositiveDefiniteError(ConeMembershipError):
    """Cholesky factorization hit a non-positive pivot.

    Attributes
    ----------
    index : int
        0-based index of the failing pivot.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class InvalidShapeError(RieszGaussError):
    """A shape parameter lies outside the admissible set.

    Attributes
    ----------
    index : int or None
        1-based coordinate at which the admissibility recursion failed,
        or None when the violation is not tied to a coordinate.
    """

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class InvalidScaleError(RieszGaussError):
    """A scale parameter is not positive definite."""


class SingularRegimeError(RieszGaussError):
    """A density (or its normalizer) was requested for parameters whose
    distribution is concentrated on the boundary of the cone and has no
    Lebesgue density."""


class LaplaceDomainError(RieszGaussError):
    """A Laplace-transform argument lies outside the domain of finiteness."""


class PatternError(RieszGaussError):
    """Invalid staircase observation counts, or tabular data whose
    missingness structure is not monotone.

    Attributes
    ----------
    index : int or None
        0-based position of the first offending entry, when applicable.
    """

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class OverflowDiagnosticError(RieszGaussError):
    """A Monte-Carlo summand exp(tr(theta X)) overflowed, signalling a
    transform argument outside, or too close to the boundary of, the
    domain of finiteness.

    Attributes
    ----------
    sample_index : int
        0-based index of the sample whose summand overflowed.
    """

    def __init__(self, message: str, sample_index: int):
        super().__init__(message)
        self.sample_index = sample_index
