"""Exception types. All derive from ValueError so callers can catch broadly."""

from __future__ import annotations

from .exactnum.linalg import DegenerateSystem

__all__ = [
    "NikishinError",
    "DegenerateSystem",
    "SupportOverlap",
    "MassPointAtTouch",
    "SignViolation",
    "PoleEvaluation",
    "ZeroTotalMass",
    "InsufficientMoments",
    "IncompleteSequence",
    "BudgetExceeded",
    "SchemaError",
]


class NikishinError(ValueError):
    pass


class SupportOverlap(NikishinError):
    def __init__(self, detail: str = ""):
        super().__init__("supports overlap" + (f": {detail}" if detail else ""))


class MassPointAtTouch(NikishinError):
    def __init__(self, detail: str = ""):
        super().__init__("mass point at touching point" + (f": {detail}" if detail else ""))


class SignViolation(NikishinError):
    def __init__(self, detail: str = ""):
        super().__init__("sign violation" + (f": {detail}" if detail else ""))


class PoleEvaluation(NikishinError, ZeroDivisionError):
    def __init__(self, detail: str = ""):
        super().__init__("pole evaluation" + (f": {detail}" if detail else ""))


class ZeroTotalMass(NikishinError):
    def __init__(self):
        super().__init__("zero total mass")


class InsufficientMoments(NikishinError):
    def __init__(self, n: int, got: int):
        super().__init__(f"need n+3 moments: n={n} requires {n + 3}, got {got}")


class IncompleteSequence(NikishinError):
    def __init__(self, detail: str = ""):
        super().__init__("Λ not complete" + (f": {detail}" if detail else ""))


class BudgetExceeded(NikishinError):
    pass


class SchemaError(NikishinError):
    pass
