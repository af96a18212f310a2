"""Exception hierarchy shared by every module of the package."""


class JordanLabError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(JordanLabError, ValueError):
    pass


class GroupOrderOverflow(JordanLabError, OverflowError):
    """A group order does not fit in an unsigned 64-bit integer."""


class TooLarge(JordanLabError):
    """An operation would enumerate more elements than the configured cap."""


class NotMember(JordanLabError, ValueError):
    pass


class LatticeExplosion(JordanLabError):
    pass


class SearchTimeout(JordanLabError):
    pass


class CatalogMismatch(JordanLabError):
    pass


class UnsupportedField(JordanLabError, ValueError):
    pass


class SingularMatrix(JordanLabError, ValueError):
    pass


class TableMiss(JordanLabError, KeyError):
    pass


class BadParams(JordanLabError, ValueError):
    pass


class DegeneratePoints(JordanLabError, ValueError):
    pass


class InvalidPencil(JordanLabError, ValueError):
    pass


class OutOfRange(JordanLabError, ValueError):
    pass


class LedgerError(JordanLabError, ValueError):
    pass
