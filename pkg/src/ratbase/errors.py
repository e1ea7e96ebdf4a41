"""Exception hierarchy shared by every module of the package."""


class RatBaseError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class InvalidBase(RatBaseError, ValueError):
    pass


class NotCoprime(InvalidBase):
    pass


class BadOrdering(InvalidBase):
    pass


class DigitOutOfRange(RatBaseError, ValueError):
    pass


class NegativeValue(RatBaseError, ValueError):
    pass


class NotRepresentable(RatBaseError):
    """The value is not in the value set of the base."""


class NotFinal(RatBaseError):
    pass


class StateCapExceeded(RatBaseError):
    pass


class DepthCapExceeded(RatBaseError):
    pass


class CapExceeded(RatBaseError):
    pass


class PropositionViolated(RatBaseError):
    """A structural fact about the language failed on concrete data."""


class AlphabetMismatch(RatBaseError, ValueError):
    pass


class NotPrefixClosed(RatBaseError, ValueError):
    pass


class UnknownKind(RatBaseError, ValueError):
    pass


class NoCommonState(RatBaseError):
    pass
