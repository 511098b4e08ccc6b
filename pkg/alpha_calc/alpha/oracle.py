"""
Exhaustive enumeration oracle for alpha_k, independent of branch and bound
"""

import logging
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from ..builder import SurfaceModel
from ..errors import InfeasibleError, OracleRangeError
from ..lattice import DivisorClass, IntegerSolution, solve_integer_system
from ..lct import EffectiveDivisor
from ..typing import IntVector
from ..utils import ceil_div, dot, first_argmax
from .bnb import derive_box
from .invariant import AlphaResult
from .problem import build_constraints

logger = logging.getLogger(__name__)

ORACLE_MAX_K = 3
_MAX_PROPAGATION_ROUNDS = 100

Interval = Tuple[int, int]


def _term_range(c: int, interval: Interval) -> Interval:
    a, b = c * interval[0], c * interval[1]
    return (a, b) if a <= b else (b, a)


def _restrict(c: int, low: int, high: int) -> Interval:
    """
    Integers t with low <= c * t <= high, c != 0
    """
    if c > 0:
        return ceil_div(low, c), high // c
    return ceil_div(high, c), low // c


def _propagate(
    rows: List[IntVector], offset: IntVector, upper: Sequence[int], bounds: List[Interval]
) -> List[Interval] | None:
    """
    Tighten the kernel coordinate intervals with 0 <= offset_i + rows_i . t <= upper_i
    until a fixpoint, None when some interval becomes empty
    """
    bounds = list(bounds)
    for _ in range(_MAX_PROPAGATION_ROUNDS):
        changed = False
        for row, p, u in zip(rows, offset, upper):
            ranges = [_term_range(c, bound) for c, bound in zip(row, bounds)]
            total_lo = sum(r[0] for r in ranges)
            total_hi = sum(r[1] for r in ranges)
            for j, c in enumerate(row):
                if c == 0:
                    continue
                rest_lo = total_lo - ranges[j][0]
                rest_hi = total_hi - ranges[j][1]
                low, high = _restrict(c, -p - rest_hi, u - p - rest_lo)
                lo, hi = max(bounds[j][0], low), min(bounds[j][1], high)
                if lo > hi:
                    return None
                if (lo, hi) != bounds[j]:
                    bounds[j] = (lo, hi)
                    changed = True
        if not changed:
            break
    return bounds


def lattice_points(solution: IntegerSolution, upper: Sequence[int]) -> Iterator[IntVector]:
    """
    Every point of the solution lattice inside the box 0 <= x <= upper
    """
    particular = solution.particular
    dimension = len(solution.kernel_basis)
    rows = [[vector[i] for vector in solution.kernel_basis] for i in range(len(particular))]

    # t_j = w_j . (x - particular) ranges over a finite interval on the box
    bounds: List[Interval] = []
    for w in solution.coordinates:
        shift = dot(w, particular)
        lo = sum(c * u for c, u in zip(w, upper) if c < 0) - shift
        hi = sum(c * u for c, u in zip(w, upper) if c > 0) - shift
        bounds.append((lo, hi))
    tightened = _propagate(rows, particular, upper, bounds)
    if tightened is None:
        return
    bounds = tightened

    # suffix[d][i]: range of sum_{j >= d} rows[i][j] t_j
    suffix = [[(0, 0)] * len(rows) for _ in range(dimension + 1)]
    for d in range(dimension - 1, -1, -1):
        for i, row in enumerate(rows):
            term = _term_range(row[d], bounds[d])
            suffix[d][i] = (suffix[d + 1][i][0] + term[0], suffix[d + 1][i][1] + term[1])

    def search(depth: int, partial: IntVector) -> Iterator[IntVector]:
        if depth == dimension:
            if all(0 <= x <= u for x, u in zip(partial, upper)):
                yield partial
            return
        lo, hi = bounds[depth]
        for i, row in enumerate(rows):
            rest_lo, rest_hi = suffix[depth + 1][i]
            low, high = -partial[i] - rest_hi, upper[i] - partial[i] - rest_lo
            if (c := row[depth]) == 0:
                if low > 0 or high < 0:
                    return
                continue
            step_lo, step_hi = _restrict(c, low, high)
            lo, hi = max(lo, step_lo), min(hi, step_hi)
            if lo > hi:
                return
        column = solution.kernel_basis[depth]
        for t in range(lo, hi + 1):
            yield from search(depth + 1, [x + t * y for x, y in zip(partial, column)])

    yield from search(0, list(particular))


def oracle_alpha_k(
    model: SurfaceModel,
    curve_labels: Sequence[str],
    divisor: DivisorClass,
    k: int,
    max_k: int = ORACLE_MAX_K,
) -> AlphaResult:
    """
    alpha_k by enumerating every integer solution of sum a_i [C_i] = k [L] in the
    linear relaxation box
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > max_k:
        raise OracleRangeError(k, max_k)
    problem = build_constraints(model, curve_labels, divisor, k)[0]
    box = derive_box(problem)
    solution = solve_integer_system(problem.matrix, problem.rhs)

    best: Tuple[int, int, IntVector] | None = None
    count = 0
    for point in lattice_points(solution, box):
        count += 1
        index, top = first_argmax(point)
        key = (-top, index, point)
        if best is None or key < (-best[0], best[1], best[2]):
            best = (top, index, point)
    logger.info("oracle k=%d: %d lattice points enumerated", k, count)
    if best is None:
        raise InfeasibleError("integer", "no effective representative of k L")
    m_star, index, point = best
    if m_star == 0:
        raise InfeasibleError("integer", "k L is only represented by the zero divisor")
    return AlphaResult(
        k=k,
        alpha_k=Fraction(k, m_star),
        m_star=m_star,
        achieved_by=curve_labels[index],
        witness=EffectiveDivisor(
            coefficients={label: Fraction(x) for label, x in zip(curve_labels, point)}
        ),
    )
