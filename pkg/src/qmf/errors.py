"""Exception hierarchy."""

from __future__ import annotations


class QmfError(Exception):
    """Base class for library errors."""


class DegenerateMatrix(QmfError):
    pass


class OutOfRangeWeight(QmfError):
    pass


class NvhViolation(QmfError):
    def __init__(self, msg: str, index: int | None = None, report=None):
        super().__init__(msg)
        self.index = index
        self.report = report


class UnsupportedBackend(QmfError):
    pass


class CharacteristicObstruction(QmfError):
    pass


class PrecisionLoss(QmfError):
    def __init__(self, msg: str, precision: int | None = None):
        super().__init__(msg)
        self.precision = precision


class NotPrime(QmfError):
    pass


class BadRepSet(QmfError):
    pass


class NotInKernelImage(QmfError):
    pass


class ZeroEigenvalue(QmfError):
    pass


class WeightTypeMismatch(QmfError):
    pass


class NotModular(QmfError):
    pass


class UsageError(QmfError):
    pass
