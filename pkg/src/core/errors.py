class HomometryError(ValueError):
    """Base class for every domain error raised by the library"""


class OverlapError(HomometryError):
    pass


class CoverageError(HomometryError):
    pass


class EmptyBlockError(HomometryError):
    pass


class EmptySetError(HomometryError):
    pass


class IndexOutOfRangeError(HomometryError):
    pass


class RingMismatchError(HomometryError):
    pass


class ArityMismatchError(HomometryError):
    pass


class AlphabetError(HomometryError):
    pass


class BudgetExceededError(HomometryError):
    pass


class CountExceedsPopulationError(HomometryError):
    pass


class ConfigError(HomometryError):
    pass


class VerificationError(RuntimeError):
    """A runtime cross-check disagreed. This always indicates a bug."""


class ScanCancelled(RuntimeError):
    pass


def require_same_ring(a, b) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"Ring sizes differ: N={a.ring.n} and N={b.ring.n}")
