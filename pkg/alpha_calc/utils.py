"""
Utility methods
"""

from fractions import Fraction
from math import floor
from typing import Dict, Iterable, List, Sequence, Tuple

from .typing import IntMatrix, IntVector, T


def identity(size: int) -> IntMatrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def transpose(matrix: Sequence[Sequence[T]]) -> List[List[T]]:
    return [list(column) for column in zip(*matrix)]


def mat_mul(left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> IntMatrix:
    columns = transpose(right)
    return [[dot(row, column) for column in columns] for row in left]


def mat_vec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> IntVector:
    return [dot(row, vector) for row in matrix]


def dot(left: Sequence, right: Sequence):
    assert len(left) == len(right), f"length mismatch {len(left)} != {len(right)}"
    return sum(x * y for x, y in zip(left, right))


def ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


def is_integral(value: Fraction) -> bool:
    return value.denominator == 1


def fractional_distance(value: Fraction) -> Fraction:
    """
    Distance from value to the nearest integer, 1/2 being the most fractional
    """
    part = value - floor(value)
    return min(part, 1 - part)


def format_rational(value: Fraction | int) -> str:
    """
    Render a rational as "p/q" in lowest terms, "p" when q = 1
    """
    return str(Fraction(value))


def filter_zero_values(values: Dict[str, Fraction]) -> Dict[str, Fraction]:
    """
    Return a new map with only the nonzero coefficients.
    """
    return {k: v for k, v in values.items() if v != 0}


def first_argmax(values: Iterable[T]) -> Tuple[int, T]:
    """
    Index and value of the first maximal entry
    """
    best: Tuple[int, T] | None = None
    for index, value in enumerate(values):
        if best is None or value > best[1]:  # type: ignore[operator]
            best = (index, value)
    assert best is not None, "empty sequence"
    return best
