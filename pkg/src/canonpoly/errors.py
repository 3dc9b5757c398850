"""Exception hierarchy shared by every canonpoly module."""


class CanonError(ValueError):
    """Base class for all canonpoly errors."""


class OrderTooLow(CanonError):
    """A truncated series does not carry enough terms for the request.

    ``needed`` is the truncation order that would have sufficed, so callers
    can re-expand and retry.
    """

    def __init__(self, message, needed=None, have=None):
        super().__init__(message)
        self.needed = needed
        self.have = have


class NonzeroConstantTerm(CanonError):
    pass


class ZeroConstantTerm(CanonError):
    pass


class BadConstantTerm(CanonError):
    pass


class NotInvertible(CanonError):
    pass


class NotCanonical(CanonError):
    pass


class MissingParam(CanonError):
    pass


class UnexpectedParam(CanonError):
    pass


class ZeroAlpha(CanonError):
    pass


class IndexOutOfRange(CanonError):
    pass


class SingularJacobian(CanonError):
    pass


class UnsupportedDeformation(CanonError):
    pass
