"""
Best-bound-first branch and bound on top of the exact simplex
"""

import logging
from heapq import heappop, heappush
from math import ceil, floor
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import InfeasibleError, UnboundedError
from ..typing import IntVector
from ..utils import dot, fractional_distance
from .problem import IlpProblem
from .simplex import LpStatus, solve_lp

logger = logging.getLogger(__name__)

Incumbent = Tuple[int, IntVector]


class IlpSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    optimum: int
    witness: Tuple[int, ...]
    nodes: int = 0


def _branching_variable(vertex: Sequence) -> int | None:
    """
    Most fractional coordinate, first one on ties, None if the vertex is integral
    """
    best: Tuple[object, int] | None = None
    for j, x in enumerate(vertex):
        distance = fractional_distance(x)
        if distance and (best is None or distance > best[0]):  # type: ignore[operator]
            best = (distance, j)
    return None if best is None else best[1]


def branch_and_bound(
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[int],
    objective: Sequence[int],
    lower: Sequence[int],
    upper: Sequence[int | None],
    incumbent: Incumbent | None = None,
) -> Tuple[Incumbent | None, int]:
    """
    Maximize objective . x over integer points, return the best point (or the
    incumbent when nothing beats it) and the number of explored nodes.
    """
    root = solve_lp(matrix, rhs, objective, lower, upper)
    if root.status is LpStatus.UNBOUNDED:
        raise UnboundedError("linear relaxation is unbounded")
    if root.status is LpStatus.INFEASIBLE:
        return incumbent, 1
    best = incumbent
    heap = [(-root.optimum, 0, list(lower), list(upper), root.vertex)]
    counter = 1
    nodes = 0
    while heap:
        negative_bound, _, lo, up, vertex = heappop(heap)
        nodes += 1
        if best is not None and floor(-negative_bound) <= best[0]:
            break
        j = _branching_variable(vertex)
        if j is None:
            point = [int(x) for x in vertex]
            value = dot(objective, point)
            if best is None or value > best[0]:
                logger.debug("incumbent %d after %d nodes", value, nodes)
                best = (value, point)
            continue
        down_up = list(up)
        down_up[j] = floor(vertex[j])
        up_lo = list(lo)
        up_lo[j] = ceil(vertex[j])
        for child_lo, child_up in ((lo, down_up), (up_lo, up)):
            child = solve_lp(matrix, rhs, objective, child_lo, child_up)
            if child.status is LpStatus.UNBOUNDED:
                raise UnboundedError("linear relaxation is unbounded")
            if child.status is LpStatus.OPTIMAL and (
                best is None or floor(child.optimum) > best[0]
            ):
                heappush(heap, (-child.optimum, counter, child_lo, child_up, child.vertex))
                counter += 1
    return best, nodes


def derive_box(problem: IlpProblem) -> Tuple[int, ...]:
    """
    Floor of the linear relaxation maximum of every coordinate
    """
    out: List[int] = []
    for j in range(problem.variables):
        solution = solve_lp(
            problem.matrix,
            problem.rhs,
            [int(i == j) for i in range(problem.variables)],
            problem.lower,
            problem.upper,
        )
        if solution.status is LpStatus.INFEASIBLE:
            raise InfeasibleError("rational", "the linear relaxation is empty")
        if solution.status is LpStatus.UNBOUNDED:
            name = problem.labels[j] if problem.labels else str(j)
            raise UnboundedError(f"coordinate {name} is unbounded")
        assert solution.optimum is not None
        out.append(floor(solution.optimum))
    return tuple(out)


def lexicographic_minimum(
    problem: IlpProblem, upper: Sequence[int], value: int, point: IntVector
) -> IntVector:
    """
    Lexicographically smallest integer point with the objective coordinate fixed to value
    """
    lo = problem.lower
    up: List[int | None] = list(upper)
    lo[problem.objective_index] = up[problem.objective_index] = value
    current = list(point)
    for i in range(len(current)):
        if lo[i] == up[i]:
            continue
        objective = [-int(j == i) for j in range(len(current))]
        found, _ = branch_and_bound(
            problem.matrix, problem.rhs, objective, lo, up, (-current[i], current)
        )
        assert found is not None, "the current point stays feasible"
        current = found[1]
        lo[i] = up[i] = current[i]
    return current


def ilp_max(problem: IlpProblem, incumbent: Sequence[int] | None = None) -> IlpSolution:
    """
    Exact integer optimum of the objective coordinate, the witness is the
    lexicographically smallest optimal point.
    """
    box = problem.box_upper if problem.box_upper is not None else derive_box(problem)
    boxed = problem.model_copy(update={"box_upper": tuple(box)})
    seed: Incumbent | None = None
    if incumbent is not None:
        if not boxed.is_feasible(incumbent):
            raise ValueError(f"incumbent {list(incumbent)} is not feasible")
        seed = (incumbent[problem.objective_index], list(incumbent))
    best, nodes = branch_and_bound(
        problem.matrix, problem.rhs, problem.objective(), problem.lower, list(box), seed
    )
    if best is None:
        raise InfeasibleError("integer", "no integer point satisfies the constraints")
    witness = lexicographic_minimum(boxed, box, best[0], best[1])
    logger.debug(
        "ilp objective %d: optimum %d in %d nodes", problem.objective_index, best[0], nodes
    )
    return IlpSolution(optimum=best[0], witness=tuple(witness), nodes=nodes)
