"""
Log canonical thresholds of simple normal crossing Q-divisors
"""

from fractions import Fraction
from typing import Dict

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, field_validator, model_serializer

from .typing import Rational
from .utils import filter_zero_values


class EffectiveDivisor(BaseModel):
    """
    Nonnegative rational combination of named curves
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Dict[str, Rational]

    @field_validator("coefficients")
    @classmethod
    def check_nonnegative(cls, value: Dict[str, Fraction]) -> Dict[str, Fraction]:
        for label, coefficient in value.items():
            if coefficient < 0:
                raise ValueError(f"negative coefficient {coefficient} for {label!r}")
        return value

    @property
    def support(self) -> Dict[str, Fraction]:
        return filter_zero_values(self.coefficients)

    def max_coefficient(self) -> Fraction:
        return max(self.coefficients.values(), default=Fraction(0))

    def __eq__(self, other: object) -> bool:
        # zero coefficients do not change the divisor
        if not isinstance(other, EffectiveDivisor):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(frozenset(self.support.items()))


class LctValue(BaseModel):
    """
    Positive rational, or infinity for the zero divisor
    """

    model_config = ConfigDict(frozen=True)

    value: Rational | None = None

    @field_validator("value")
    @classmethod
    def check_positive(cls, value: Fraction | None) -> Fraction | None:
        if value is not None and value <= 0:
            raise ValueError(f"log canonical threshold must be positive, got {value}")
        return value

    @classmethod
    def infinity(cls) -> Self:
        return cls(value=None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @model_serializer
    def serialize(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __str__(self) -> str:
        return self.serialize()

    def __lt__(self, other: "LctValue") -> bool:
        if self.value is None:
            return False
        return other.value is None or self.value < other.value


def lct_snc(divisor: EffectiveDivisor) -> LctValue:
    """
    lct of a normal crossing divisor sum a_i D_i is 1 / max a_i
    """
    if any(v < 0 for v in divisor.coefficients.values()):
        raise ValueError("log canonical threshold needs an effective divisor")
    top = divisor.max_coefficient()
    if top == 0:
        return LctValue.infinity()
    return LctValue(value=1 / top)


def scale(divisor: EffectiveDivisor, c: Fraction | int) -> EffectiveDivisor:
    """
    Multiply every coefficient by c > 0, lct(c D) = lct(D) / c
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"scaling factor must be positive, got {c}")
    return EffectiveDivisor(
        coefficients={label: c * value for label, value in divisor.coefficients.items()}
    )
