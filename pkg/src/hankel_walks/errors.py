"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HankelWalksError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class InsufficientTerms(HankelWalksError):
    def __init__(self, required: int, available: int, what: str = "prefix"):
        self.required = required
        self.available = available
        super().__init__(f"{what} needs at least {required} terms, got {available}")


class EmptyPrefix(HankelWalksError):
    pass


class CapExceeded(HankelWalksError):
    def __init__(self, name: str, value: int, cap: int):
        self.name, self.value, self.cap = name, value, cap
        super().__init__(f"{name}={value} exceeds enumeration cap {cap}")


class InsufficientWeights(HankelWalksError):
    def __init__(self, level: int, available: int):
        self.level = level
        self.available = available
        super().__init__(
            f"level weight lambda_{level} requested but only {available} "
            "levels given and the list is not terminated"
        )


class ZeroLeadingTerm(HankelWalksError):
    pass


class InconsistentMoments(HankelWalksError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"moment prefix inconsistent with termination at a_{index}")


class MalformedPadding(HankelWalksError):
    pass


class NotAdjacent(HankelWalksError):
    pass


class InvalidWalk(HankelWalksError):
    pass


class NotBipartite(HankelWalksError):
    pass


class LanczosBreakdown(HankelWalksError):
    """Two-sided recurrence hit a zero pairing between nonzero vectors."""


class MismatchBug(HankelWalksError):
    """a'_n != a'_0 * b_n; signals a defect in this package, never in the input."""
