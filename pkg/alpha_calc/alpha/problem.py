"""
Integer programs A a = k l, a >= 0 over the classes of a declared curve list
"""

import logging
from typing import List, Sequence, Tuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator

from ..builder import SurfaceModel
from ..errors import BasisMismatchError, NonSpanningError
from ..lattice import DivisorClass, rank
from ..utils import transpose

logger = logging.getLogger(__name__)


class IlpProblem(BaseModel):
    """
    Maximize a[objective_index] over integer a with matrix * a = rhs and
    box_lower <= a <= box_upper (box_lower defaults to 0, box_upper to none).
    """

    model_config = ConfigDict(frozen=True)

    matrix: Tuple[Tuple[int, ...], ...]
    rhs: Tuple[int, ...]
    objective_index: NonNegativeInt = 0
    box_upper: Tuple[int, ...] | None = None
    box_lower: Tuple[int, ...] | None = None
    labels: Tuple[str, ...] | None = None

    @model_validator(mode="after")
    def check_dimensions(self) -> Self:
        if len(self.matrix) != len(self.rhs):
            raise ValueError(f"{len(self.matrix)} rows but {len(self.rhs)} right hand sides")
        width = self.variables
        if any(len(row) != width for row in self.matrix):
            raise ValueError("ragged constraint matrix")
        if self.objective_index >= width:
            raise ValueError(f"objective index {self.objective_index} out of range")
        for name in ("box_upper", "box_lower", "labels"):
            if (value := getattr(self, name)) is not None and len(value) != width:
                raise ValueError(f"{name} must have {width} entries")
        return self

    @property
    def variables(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def lower(self) -> List[int]:
        return list(self.box_lower) if self.box_lower is not None else [0] * self.variables

    @property
    def upper(self) -> List[int | None]:
        if self.box_upper is None:
            return [None] * self.variables
        return list(self.box_upper)

    def objective(self) -> List[int]:
        return [int(i == self.objective_index) for i in range(self.variables)]

    def is_feasible(self, point: Sequence[int]) -> bool:
        if len(point) != self.variables:
            return False
        if any(x < lo for x, lo in zip(point, self.lower)):
            return False
        if any(up is not None and x > up for x, up in zip(point, self.upper)):
            return False
        return all(
            sum(a * x for a, x in zip(row, point)) == b for row, b in zip(self.matrix, self.rhs)
        )


def build_constraints(
    model: SurfaceModel, curve_labels: Sequence[str], divisor: DivisorClass, k: int
) -> List[IlpProblem]:
    """
    One problem per curve of the list, sharing the matrix whose columns are the
    curve classes and the right hand side k * [L].
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    columns = [list(model.curve(label).coefficients) for label in curve_labels]
    if not columns:
        raise NonSpanningError(0, model.rank)
    matrix = transpose(columns)
    if (found := rank(matrix)) != model.rank:
        raise NonSpanningError(found, model.rank)
    if divisor.basis_id != model.basis_id:
        raise BasisMismatchError(model.basis_id, divisor.basis_id)
    rhs = tuple(k * x for x in divisor.coefficients)
    shared = tuple(tuple(row) for row in matrix)
    logger.debug("constraints for k=%d: %dx%d system", k, len(shared), len(columns))
    return [
        IlpProblem(matrix=shared, rhs=rhs, objective_index=j, labels=tuple(curve_labels))
        for j in range(len(columns))
    ]
