from fractions import Fraction
from typing import Annotated, Any, List, TypeVar

from pydantic import BeforeValidator, PlainSerializer

IntVector = List[int]
IntMatrix = List[List[int]]
T = TypeVar("T")


def _to_fraction(value: Any) -> Any:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as error:
            raise ValueError(f"invalid rational: {value!r}") from error
    return value


Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(str, return_type=str, when_used="json"),
]
"""
Exact rational, accepts int, Fraction or "p/q", serialized as "p/q" ("p" when q = 1)
"""
