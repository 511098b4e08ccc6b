"""
Exact integer linear algebra over a lattice with a symmetric bilinear pairing
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, model_validator

from .errors import BasisMismatchError, InfeasibleError
from .typing import IntMatrix, IntVector
from .utils import dot, identity, mat_vec

logger = logging.getLogger(__name__)


class DivisorClass(BaseModel):
    """
    Integer coefficient vector over the basis identified by basis_id
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...]
    basis_id: str

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def _check_basis(self, other: "DivisorClass") -> None:
        if self.basis_id != other.basis_id:
            raise BasisMismatchError(self.basis_id, other.basis_id)
        assert self.rank == other.rank, f"rank mismatch on basis {self.basis_id}"

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_basis(other)
        return DivisorClass(
            coefficients=tuple(x + y for x, y in zip(self.coefficients, other.coefficients)),
            basis_id=self.basis_id,
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return self * -1

    def __mul__(self, factor: int) -> "DivisorClass":
        return DivisorClass(
            coefficients=tuple(factor * x for x in self.coefficients),
            basis_id=self.basis_id,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    @classmethod
    def zero(cls, rank: int, basis_id: str) -> Self:
        return cls(coefficients=(0,) * rank, basis_id=basis_id)

    @classmethod
    def unit(cls, index: int, rank: int, basis_id: str) -> Self:
        return cls(
            coefficients=tuple(int(i == index) for i in range(rank)), basis_id=basis_id
        )


class IntersectionForm(BaseModel):
    """
    Symmetric integer matrix of the pairing on the basis identified by basis_id
    """

    model_config = ConfigDict(frozen=True)

    matrix: Tuple[Tuple[int, ...], ...]
    basis_id: str

    @model_validator(mode="after")
    def check_symmetric(self) -> Self:
        size = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != size:
                raise ValueError(f"intersection matrix is not square (row {i})")
            for j in range(i):
                if row[j] != self.matrix[j][i]:
                    raise ValueError(f"intersection matrix is not symmetric at ({i}, {j})")
        return self

    @property
    def rank(self) -> int:
        return len(self.matrix)


def pairing(form: IntersectionForm, u: DivisorClass, v: DivisorClass) -> int:
    """
    Return u^T Q v
    """
    for cls in (u, v):
        if cls.basis_id != form.basis_id:
            raise BasisMismatchError(form.basis_id, cls.basis_id)
    return dot(u.coefficients, mat_vec(form.matrix, v.coefficients))


@dataclass(frozen=True)
class SnfDecomposition:
    """
    u * A * v = d with u, v unimodular, d diagonal with d_1 | d_2 | ...
    v_inv is the inverse of v, tracked along the column operations.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.v)))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


class _Reducer:
    """
    Working state of the Smith normal form reduction
    """

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self.rows = len(matrix)
        self.cols = len(matrix[0]) if self.rows else 0
        self.d = [[int(x) for x in row] for row in matrix]
        self.u = identity(self.rows)
        self.v = identity(self.cols)
        self.v_inv = identity(self.cols)

    def min_pivot(self, t: int) -> Tuple[int, int] | None:
        best: Tuple[int, int, int] | None = None
        for i in range(t, self.rows):
            for j in range(t, self.cols):
                value = abs(self.d[i][j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else (best[1], best[2])

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            for m in (self.d, self.u):
                m[i], m[j] = m[j], m[i]

    def swap_columns(self, i: int, j: int) -> None:
        if i != j:
            for m in (self.d, self.v):
                for row in m:
                    row[i], row[j] = row[j], row[i]
            self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def add_row(self, target: int, source: int, factor: int) -> None:
        # row[target] += factor * row[source]
        for m in (self.d, self.u):
            m[target] = [x + factor * y for x, y in zip(m[target], m[source])]

    def add_column(self, target: int, source: int, factor: int) -> None:
        # col[target] += factor * col[source], inverse is a row operation on v_inv
        for m in (self.d, self.v):
            for row in m:
                row[target] += factor * row[source]
        self.v_inv[source] = [
            x - factor * y for x, y in zip(self.v_inv[source], self.v_inv[target])
        ]

    def negate_row(self, i: int) -> None:
        for m in (self.d, self.u):
            m[i] = [-x for x in m[i]]

    def reduce(self) -> int:
        steps = 0
        t = 0
        while t < min(self.rows, self.cols):
            pivot = self.min_pivot(t)
            if pivot is None:
                break
            steps += 1
            self.swap_rows(t, pivot[0])
            self.swap_columns(t, pivot[1])
            p = self.d[t][t]
            clean = True
            for i in range(t + 1, self.rows):
                if (q := self.d[i][t] // p) != 0:
                    self.add_row(i, t, -q)
                clean = clean and self.d[i][t] == 0
            for j in range(t + 1, self.cols):
                if (q := self.d[t][j] // p) != 0:
                    self.add_column(j, t, -q)
                clean = clean and self.d[t][j] == 0
            if not clean:
                # a smaller remainder is left, pick it as the next pivot
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, self.rows)
                    if any(self.d[i][j] % p for j in range(t + 1, self.cols))
                ),
                None,
            )
            if offender is not None:
                self.add_row(t, offender, 1)
                continue
            if p < 0:
                self.negate_row(t)
            t += 1
        return steps


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SnfDecomposition:
    """
    Smith normal form with unimodular transforms, pivoting on the entry of
    minimal absolute value.
    """
    reducer = _Reducer(matrix)
    steps = reducer.reduce()
    logger.debug(
        "smith normal form of %dx%d matrix in %d pivot steps",
        reducer.rows,
        reducer.cols,
        steps,
    )
    return SnfDecomposition(u=reducer.u, d=reducer.d, v=reducer.v, v_inv=reducer.v_inv)


def rank(matrix: Sequence[Sequence[int]]) -> int:
    return smith_normal_form(matrix).rank if matrix else 0


@dataclass(frozen=True)
class IntegerSolution:
    """
    All integer solutions of A x = b are particular + kernel_basis * t, t integral.
    coordinates[j] is the linear form returning t_j from a solution x.
    """

    particular: IntVector
    kernel_basis: List[IntVector]
    coordinates: List[IntVector]

    def point(self, t: Sequence[int]) -> IntVector:
        assert len(t) == len(self.kernel_basis), "wrong number of kernel coordinates"
        out = list(self.particular)
        for coefficient, vector in zip(t, self.kernel_basis):
            if coefficient:
                out = [x + coefficient * y for x, y in zip(out, vector)]
        return out


def solve_integer_system(a: Sequence[Sequence[int]], b: Sequence[int]) -> IntegerSolution:
    """
    Parametrize the integer solutions of A x = b, raise InfeasibleError if there is none
    """
    assert len(a) > 0, "empty system"
    assert len(a) == len(b), f"dimension mismatch {len(a)} rows, {len(b)} right hand side"
    snf = smith_normal_form(a)
    cols = len(a[0])
    c = mat_vec(snf.u, b)
    r = snf.rank
    if any(c[r:]):
        raise InfeasibleError("rational", "right hand side outside the column space")
    y: IntVector = []
    for i in range(r):
        quotient, remainder = divmod(c[i], snf.d[i][i])
        if remainder:
            raise InfeasibleError(
                "congruence", f"{c[i]} is not divisible by invariant factor {snf.d[i][i]}"
            )
        y.append(quotient)
    y.extend([0] * (cols - r))
    return IntegerSolution(
        particular=mat_vec(snf.v, y),
        kernel_basis=[[row[j] for row in snf.v] for j in range(r, cols)],
        coordinates=[list(row) for row in snf.v_inv[r:]],
    )
