"""Exception hierarchy shared by every module of the package."""


class SupernilError(Exception):
    """Base class for all package errors."""


class ParseError(SupernilError):
    """Malformed algebra or congruence document."""


class ValidationError(SupernilError):
    """Well-formed document whose content violates an invariant."""


class NotEquivalence(SupernilError):
    pass


class BudgetExceeded(SupernilError):
    """A closure or lattice grew past its configured cap.

    ``count`` is the cardinality reached when the cap was hit.
    """

    def __init__(self, count, budget, what="closure"):
        self.count = count
        self.budget = budget
        self.what = what
        super().__init__(f"{what} exceeded budget {budget} (reached {count})")


class DimensionTooLarge(SupernilError):
    pass


class NotComparable(SupernilError):
    pass


class NotMinimalSet(SupernilError):
    pass


class DomainMismatch(SupernilError):
    pass


class NotSubgroup(SupernilError):
    pass
