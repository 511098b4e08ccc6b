"""
Exact two-phase simplex with Bland's rule on an integer-preserving tableau
"""

import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Matrix

from ..typing import Rational
from .problem import IlpProblem

logger = logging.getLogger(__name__)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: LpStatus
    optimum: Rational | None = None
    vertex: Tuple[Rational, ...] | None = None

    @model_validator(mode="after")
    def check_status(self) -> Self:
        finite = self.status is LpStatus.OPTIMAL
        if finite != (self.optimum is not None) or finite != (self.vertex is not None):
            raise ValueError("optimum and vertex are set exactly for optimal solutions")
        return self


_INFEASIBLE = LpSolution(status=LpStatus.INFEASIBLE)
_UNBOUNDED = LpSolution(status=LpStatus.UNBOUNDED)


class _Tableau:
    """
    Rows hold denominator * B^-1 [A | b] as integers. A pivot keeps every entry
    integral: the division by the previous denominator is exact.
    """

    def __init__(self, rows: List[List[int]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.denominator = 1
        self.pivots = 0

    def value(self, i: int) -> Fraction:
        return Fraction(self.rows[i][-1], self.denominator)

    def pivot(self, r: int, c: int) -> None:
        p = self.rows[r][c]
        d = self.denominator
        pivot_row = self.rows[r]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                self.rows[i] = [(p * x - f * y) // d for x, y in zip(row, pivot_row)]
        self.basis[r] = c
        self.denominator = p
        if p < 0:
            self.rows = [[-x for x in row] for row in self.rows]
            self.denominator = -p
        self.pivots += 1

    def reduced_cost(self, cost: Sequence[int], j: int) -> int:
        # scaled by the denominator, negative means x_j improves the objective
        total = sum(cost[b] * row[j] for b, row in zip(self.basis, self.rows) if cost[b])
        return total - self.denominator * cost[j]

    def maximize(self, cost: Sequence[int], columns: int) -> LpStatus:
        while True:
            basic = set(self.basis)
            entering = next(
                (
                    j
                    for j in range(columns)
                    if j not in basic and self.reduced_cost(cost, j) < 0
                ),
                None,
            )
            if entering is None:
                return LpStatus.OPTIMAL
            leaving: Tuple[Fraction, int, int] | None = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (Fraction(row[-1], row[entering]), self.basis[i], i)
                    if leaving is None or key < leaving:
                        leaving = key
            if leaving is None:
                return LpStatus.UNBOUNDED
            self.pivot(leaving[2], entering)


@lru_cache(maxsize=4096)
def _independent_rows(
    matrix: Tuple[Tuple[int, ...], ...], columns: Tuple[int, ...]
) -> Tuple[int, ...]:
    """
    Indices of a maximal set of linearly independent rows of matrix restricted to columns
    """
    if not matrix or not columns:
        return ()
    restricted = Matrix([[row[j] for j in columns] for row in matrix])
    _, pivots = restricted.T.rref()
    return tuple(pivots)


def solve_lp(
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[int],
    objective: Sequence[int],
    lower: Sequence[int],
    upper: Sequence[int | None],
) -> LpSolution:
    """
    Maximize objective . x subject to matrix x = rhs, lower <= x <= upper (None: no bound)
    """
    n = len(objective)
    if any(up is not None and up < lo for lo, up in zip(lower, upper)):
        return _INFEASIBLE
    free = tuple(j for j in range(n) if upper[j] is None or upper[j] > lower[j])
    shifted = [b - sum(a * lo for a, lo in zip(row, lower)) for row, b in zip(matrix, rhs)]

    key = tuple(tuple(row) for row in matrix)
    equalities = _independent_rows(key, free)
    bounded = [(k, j) for k, j in enumerate(free) if upper[j] is not None]
    nf, nb, ne = len(free), len(bounded), len(equalities)
    art = nf + nb

    rows: List[List[int]] = []
    for e, i in enumerate(equalities):
        sign = -1 if shifted[i] < 0 else 1
        row = [sign * matrix[i][j] for j in free] + [0] * nb + [0] * ne + [sign * shifted[i]]
        row[art + e] = 1
        rows.append(row)
    for s, (k, j) in enumerate(bounded):
        row = [0] * (art + ne) + [upper[j] - lower[j]]  # type: ignore[operator]
        row[k] = 1
        row[nf + s] = 1
        rows.append(row)
    tableau = _Tableau(rows, [art + e for e in range(ne)] + [nf + s for s in range(nb)])

    # phase 1: drive the artificial variables to zero
    phase1 = [0] * art + [-1] * ne
    tableau.maximize(phase1, art + ne)
    if any(b >= art and tableau.rows[i][-1] != 0 for i, b in enumerate(tableau.basis)):
        logger.debug("lp infeasible after %d pivots", tableau.pivots)
        return _INFEASIBLE
    for i, b in enumerate(tableau.basis):
        if b >= art:
            j = next(j for j in range(art) if tableau.rows[i][j] != 0)
            tableau.pivot(i, j)
    tableau.rows = [row[:art] + [row[-1]] for row in tableau.rows]

    # phase 2
    cost = [objective[j] for j in free] + [0] * nb
    if tableau.maximize(cost, art) is LpStatus.UNBOUNDED:
        logger.debug("lp unbounded after %d pivots", tableau.pivots)
        return _UNBOUNDED
    vertex = [Fraction(x) for x in lower]
    for i, b in enumerate(tableau.basis):
        if b < nf:
            vertex[free[b]] += tableau.value(i)
    if len(equalities) < len(matrix) and any(
        sum(a * x for a, x in zip(row, vertex)) != b for row, b in zip(matrix, rhs)
    ):
        # a dropped row is a combination of the kept ones with a different right hand side
        return _INFEASIBLE
    optimum = sum((c * x for c, x in zip(objective, vertex)), Fraction(0))
    logger.debug("lp optimum %s after %d pivots", optimum, tableau.pivots)
    return LpSolution(status=LpStatus.OPTIMAL, optimum=optimum, vertex=tuple(vertex))


def lp_max(problem: IlpProblem) -> LpSolution:
    """
    Exact optimum of the linear relaxation of the problem
    """
    return solve_lp(problem.matrix, problem.rhs, problem.objective(), problem.lower, problem.upper)
