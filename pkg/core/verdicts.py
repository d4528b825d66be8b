"""
Verdicts returned by the verification routines, and the witnesses that back up every failure.
"""


# ----------------------------------------------------------------------------------------------------------------------
class Witness(object):
    """
    Replayable evidence for a violated property: the input states and/or elements that trigger it, and the values that
    were measured on them.
    """

    __slots__ = ('states', 'elements', 'measured')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, states=(), elements=(), measured=None):
        self.states = tuple(states)
        self.elements = tuple(elements)
        self.measured = dict(measured or dict())

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'Witness(states=%r, elements=%r, measured=%r)' % (self.states, self.elements, self.measured)


# ----------------------------------------------------------------------------------------------------------------------
class Verdict(object):

    HOLDS = 'Holds'
    VERIFIED = 'Verified'
    FAILS = 'FailsWithWitness'
    UNDETERMINED = 'Undetermined'
    STRUCTURALLY_TRUE = 'StructurallyTrue'
    UNVERIFIED = 'Unverified'

    _POSITIVE = (HOLDS, VERIFIED, STRUCTURALLY_TRUE)

    __slots__ = ('status', 'witness', 'message')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, status, witness=None, message=''):
        # type: (str, Witness, str) -> None
        self.status = status
        self.witness = witness
        self.message = message

    # ------------------------------------------------------------------------------------------------------------------
    @classmethod
    def holds(cls):
        return cls(cls.HOLDS)

    # ------------------------------------------------------------------------------------------------------------------
    @classmethod
    def verified(cls):
        return cls(cls.VERIFIED)

    # ------------------------------------------------------------------------------------------------------------------
    @classmethod
    def fails(cls, witness, message=''):
        return cls(cls.FAILS, witness=witness, message=message)

    # ------------------------------------------------------------------------------------------------------------------
    @classmethod
    def undetermined(cls, message=''):
        return cls(cls.UNDETERMINED, message=message)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def ok(self):
        return self.status in self._POSITIVE

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def failed(self):
        return self.status == self.FAILS

    # ------------------------------------------------------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Verdict) and self.status == other.status

    # ------------------------------------------------------------------------------------------------------------------
    def __ne__(self, other):
        return not self.__eq__(other)

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        if self.witness is None:
            return 'Verdict(%s)' % self.status
        return 'Verdict(%s, %r)' % (self.status, self.witness)
