"""Typed errors shared across the package."""


class EqTransferError(Exception):
    """Base class for all package-specific errors."""


class CyclicPreferenceError(EqTransferError):
    """An operation requiring an acyclic preference got a cyclic one."""


class UnboundedHeightError(EqTransferError):
    """A preference has no finite chain-height bound (it is cyclic)."""


class TooLargeError(EqTransferError):
    """An enumeration would exceed the configured size cap."""


class NotDeterminedError(EqTransferError):
    """A computation that presumes a determined structure detected a violation."""


class NotZeroSumError(EqTransferError):
    """The two preferences are not inverses of each other."""


class HypothesisViolatedError(EqTransferError):
    """A stated precondition on the input data does not hold."""


class BadIndexError(EqTransferError, IndexError):
    """A player, strategy, or outcome index is out of range."""


class UnknownNameError(EqTransferError, KeyError):
    """No corpus entry goes by the requested name."""


class SchemaError(EqTransferError):
    """A JSON document does not match the expected schema."""
