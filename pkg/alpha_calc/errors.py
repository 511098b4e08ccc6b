"""
Exception classes
"""

from typing import Literal

InfeasibleReason = Literal["rational", "congruence", "integer"]


class AlphaCalcError(ValueError):
    """
    Base class for all errors raised by alpha-calc
    """


class BasisMismatchError(AlphaCalcError):
    def __init__(self, left: str, right: str):
        super().__init__(f"basis mismatch: {left!r} vs {right!r}")
        self.left = left
        self.right = right


class UnknownLabelError(AlphaCalcError):
    def __init__(self, label: str):
        super().__init__(f"unknown curve label: {label!r}")
        self.label = label


class DuplicateLabelError(AlphaCalcError):
    def __init__(self, label: str):
        super().__init__(f"duplicate label: {label!r}")
        self.label = label


class RealizabilityError(AlphaCalcError):
    """
    Two curves declared through the same points meet less than the points require
    """

    def __init__(self, first: str, second: str, pairing: int, required: int):
        super().__init__(
            f"curves {first!r} and {second!r} meet with multiplicity {pairing}, "
            f"but at least {required} is required by the declared points"
        )
        self.first = first
        self.second = second
        self.pairing = pairing
        self.required = required


class DegenerateFormError(AlphaCalcError):
    pass


class NonIntegralError(AlphaCalcError):
    def __init__(self, label: str):
        super().__init__(f"non integral coefficient for {label!r}")
        self.label = label


class InfeasibleError(AlphaCalcError):
    """
    No solution exists, reason tells which obstruction was met:
    - rational: no solution even over the rationals
    - congruence: rational solutions exist but none is integral
    - integer: the integer program (with sign and box constraints) is empty
    """

    def __init__(self, reason: InfeasibleReason, detail: str = ""):
        super().__init__(f"infeasible ({reason})" + (f": {detail}" if detail else ""))
        self.reason = reason
        self.detail = detail


class UnboundedError(AlphaCalcError):
    pass


class NonSpanningError(AlphaCalcError):
    def __init__(self, rank: int, expected: int):
        super().__init__(
            f"curve classes span a sublattice of rank {rank}, expected {expected}"
        )
        self.rank = rank
        self.expected = expected


class OracleRangeError(AlphaCalcError):
    def __init__(self, k: int, max_k: int):
        super().__init__(f"oracle refuses k={k}, supported range is 1..{max_k}")
        self.k = k
        self.max_k = max_k


class SurfaceSpecError(AlphaCalcError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
