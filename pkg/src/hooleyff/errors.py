"""Exception types shared across the package.

Every precondition failure raises a named exception whose message states the
violated condition and the offending input, so reports and CLI output can name
the failing clause directly.
"""


class HooleyFFError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------- base field

class NotPrime(HooleyFFError):
    pass


class ReducibleModulus(HooleyFFError):
    pass


class DegreeMismatch(HooleyFFError):
    pass


class ZeroArgument(HooleyFFError):
    pass


class TableUnavailable(HooleyFFError):
    pass


# ------------------------------------------------------------ polynomial ring

class DivisionByZeroPoly(HooleyFFError):
    pass


class NotSquarefree(HooleyFFError):
    pass


class NotMonic(HooleyFFError):
    pass


class Reducible(HooleyFFError):
    pass


class TooLarge(HooleyFFError):
    pass


# --------------------------------------------------------------- characters

class ExponentOutOfRange(HooleyFFError):
    pass


# ------------------------------------------------------------ trace functions

class HypothesisViolation(HooleyFFError):
    pass


class NotPrimitive(HooleyFFError):
    pass


class KTooSmall(HooleyFFError):
    pass


class NotCoprime(HooleyFFError):
    pass


class DegreeTooLargeForCharacteristic(HooleyFFError):
    pass


# ---------------------------------------------------------------- transforms

class RingMismatch(HooleyFFError):
    pass


# --------------------------------------------------------------- experiments

class XNotPowerOfQ(HooleyFFError):
    pass


class NTooLarge(HooleyFFError):
    pass


class RangeViolation(HooleyFFError):
    pass


class CharacteristicTooSmall(HooleyFFError):
    pass


class XTooLarge(HooleyFFError):
    pass


class NotIrreducible(HooleyFFError):
    pass


# ----------------------------------------------------------------------- cli

class ConfigParse(HooleyFFError):
    pass


class Validation(HooleyFFError):
    pass
