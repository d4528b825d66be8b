# ----------------------------------------------------------------------------------------------------------------------
class WignerStoneError(Exception):
    """
    Base class for every error raised by wigner_stone.
    """


# ----------------------------------------------------------------------------------------------------------------------
class OperationalError(WignerStoneError):
    """
    Bad input, broken preconditions, unreadable files. The command line maps these to exit code 2.
    """


# ----------------------------------------------------------------------------------------------------------------------
class PropertyViolationError(WignerStoneError):
    """
    A mathematical property does not hold. Always carries a witness that can be serialized and replayed.
    The command line maps these to exit code 1.
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, message, witness=None):
        super(PropertyViolationError, self).__init__(message)
        self.witness = witness


# -- operational errors
class EmptyDimsError(OperationalError):
    pass


class NonPositiveDimError(OperationalError):
    pass


class AlgebraMismatchError(OperationalError):
    pass


class BlockOutOfRangeError(OperationalError):
    pass


class DimensionMismatchError(OperationalError):
    pass


class ZeroVectorError(OperationalError):
    pass


class NonIsometryError(OperationalError):
    pass


class AlphaOutOfRangeError(OperationalError):
    pass


class PreconditionFailedError(OperationalError):
    pass


class NotBijectiveError(OperationalError):
    pass


class CommandNotFoundError(OperationalError):
    pass


class UnknownBlackBoxError(OperationalError):
    pass


class MalformedInputError(OperationalError):
    pass


class ConfigError(OperationalError):
    pass


# -- property violations
class NotFibrePreservingError(PropertyViolationError):
    pass


class NeitherMultNorAntiError(PropertyViolationError):
    pass


class NotProjectionPreservingError(PropertyViolationError):
    pass


class NotStarHomomorphismError(PropertyViolationError):
    pass


# ----------------------------------------------------------------------------------------------------------------------
class ReconstructionFailure(PropertyViolationError):

    NON_ORTHONORMAL_IMAGES = 'NonOrthonormalImages'
    PHASE_PROBE_MISMATCH = 'PhaseProbeMismatch'
    KIND_INCONSISTENT = 'KindInconsistent'
    VALIDATION_FAILED = 'ValidationFailed'
    FIBRE_MISMATCH = 'FibreMismatch'

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, reason, message, witness=None):
        super(ReconstructionFailure, self).__init__('%s: %s' % (reason, message), witness=witness)
        self.reason = reason


# ----------------------------------------------------------------------------------------------------------------------
class AssemblyFailure(PropertyViolationError):

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, fiber, cause):
        # type: (int, PropertyViolationError) -> None
        super(AssemblyFailure, self).__init__(
            'Fiber %s could not be reconstructed: %s' % (fiber, cause),
            witness=getattr(cause, 'witness', None),
        )
        self.fiber = fiber
        self.cause = cause
