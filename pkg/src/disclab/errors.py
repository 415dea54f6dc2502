"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2); exceeded
resource caps derive from :class:`ResourceLimit` (CLI exit code 3).
"""


class DisclabError(Exception):
    pass


class InputError(DisclabError, ValueError):
    pass


class ResourceLimit(DisclabError):
    """A configured cap was hit.

    ``partial`` optionally carries the best result found before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(InputError):
    pass


class InvalidParams(InputError):
    pass


class NotSquare(InputError):
    pass


class TargetSmallerThanSource(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class DimensionMismatch(InputError):
    pass


class NotPowerOfTwo(InputError):
    pass


class OutOfRange(InputError):
    pass


class EntriesOutOfRange(InputError):
    pass


class NotBinary(InputError):
    pass


class NoShatteredSet(InputError):
    pass


class NonUnitVector(InputError):
    pass


class RankDeficient(InputError):
    pass


class SizeLimit(ResourceLimit):
    pass


class SearchSpaceTooLarge(ResourceLimit):
    pass


class BudgetExceeded(ResourceLimit):
    pass
