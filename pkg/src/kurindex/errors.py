"""Exception hierarchy shared by every module."""


class KurIndexError(Exception):
    pass


class IndexOutOfRange(KurIndexError, IndexError):
    pass


class CycleDetected(KurIndexError, ValueError):
    """The cover relation has a directed cycle; ``cycle`` holds a witness."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cover relation has a cycle: " + " < ".join(map(str, self.cycle)))


class CapacityExceeded(KurIndexError, ValueError):
    pass


class NotJoinSemilattice(KurIndexError, ValueError):
    pass


class NotALattice(KurIndexError, ValueError):
    pass


class InvalidSpec(KurIndexError, ValueError):
    pass


class InvalidArgs(KurIndexError, ValueError):
    pass


class PhiNotEmbedding(KurIndexError, ValueError):
    pass


class PsiNotEmbedding(KurIndexError, AssertionError):
    pass


class InternalConsistencyError(KurIndexError, AssertionError):
    pass


class ParseError(KurIndexError, ValueError):
    pass


class BudgetExceeded(KurIndexError):
    """A search ran out of time or nodes.

    Whatever was certified before the cut-off rides along: ``lower`` and
    ``upper`` bound the requested quantity and ``witness`` backs ``upper``.
    """

    def __init__(self, what, lower=None, upper=None, witness=None):
        self.what = what
        self.lower = lower
        self.upper = upper
        self.witness = witness
        super().__init__(f"{what}: budget exceeded (certified interval [{lower}, {upper}])")


# older name, kept for callers that only care about time limits
TimeBudgetExceeded = BudgetExceeded
