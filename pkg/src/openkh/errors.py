"""Exception types shared across the package."""


class OpenKhError(Exception):
    """Base class for all package errors."""


class MalformedToken(OpenKhError):
    """A word/braid token could not be parsed."""


class UnknownCurve(OpenKhError):
    """A curve index is not part of the surface's curve system."""


class NotBraidLike(OpenKhError):
    """The twist word uses curves outside the braid-generator chain."""


class TorsionEncountered(OpenKhError):
    """A resolution has torsion in its first homology.

    The wedge/quotient calculus is only valid when every complete resolution
    is a connected sum of S^1 x S^2 factors; torsion means the supplied curve
    system is outside that guarantee.
    """


class NotAKnot(OpenKhError):
    """An s-invariant was requested for a multi-component closure."""


class CrossCheckMismatch(OpenKhError):
    """Engine and braid oracle disagree on a quantity they both compute."""
