"""Exception types raised by otideal."""


class OTIdealError(Exception):
    """Base class for all library errors."""


class ZeroForm(OTIdealError):
    def __init__(self, index):
        super().__init__(f"form {index} is zero")
        self.index = index


class ProportionalForms(OTIdealError):
    def __init__(self, i, j):
        super().__init__(f"forms {i} and {j} are proportional")
        self.i = i
        self.j = j


class InvalidParameter(OTIdealError):
    pass


class NotInRelationSpace(OTIdealError):
    pass


class NotACover(OTIdealError):
    def __init__(self, gamma):
        super().__init__(f"{sorted(gamma)} is not a cover of the relation set")
        self.gamma = frozenset(gamma)


class OverlapTooLarge(OTIdealError):
    def __init__(self, a, b, overlap):
        super().__init__(
            f"members {a} and {b} share {len(overlap)} support indices; "
            "the intersection graph needs overlaps of size at most 1"
        )
        self.pair = (a, b)
        self.overlap = frozenset(overlap)


class BudgetExceeded(OTIdealError):
    """A search ran out of budget.

    ``partial`` holds whatever bound or partial result was reached before
    stopping (an upper bound for minimisations, a list for enumerations).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CertificateNotFound(OTIdealError):
    def __init__(self, target, degree_bound):
        super().__init__(
            f"no membership certificate with cofactor degree <= {degree_bound}"
            f" for {target}; the search is inconclusive"
        )
        self.target = target
        self.degree_bound = degree_bound


class ParseError(OTIdealError):
    pass
