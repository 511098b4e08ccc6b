from fractions import Fraction

from hypothesis import given, settings

from alpha_calc.alpha import LpStatus, build_constraints, lp_max
from alpha_calc.alpha.simplex import solve_lp
from tests.conftest import E1, boxed_problems, integer_points


def test_simple_lp():
    # x + y = 3, x <= 2: max x
    solution = solve_lp([[1, 1]], [3], [1, 0], [0, 0], [2, None])
    assert solution.status is LpStatus.OPTIMAL
    assert solution.optimum == 2
    assert solution.vertex == (2, 1)


def test_fractional_vertex():
    # 2x + 2y = 3
    solution = solve_lp([[2, 2]], [3], [1, 0], [0, 0], [None, None])
    assert solution.optimum == Fraction(3, 2)


def test_infeasible():
    assert solve_lp([[1, 1]], [-1], [1, 0], [0, 0], [None, None]).status is LpStatus.INFEASIBLE
    assert solve_lp([[1, 1], [1, 1]], [1, 2], [1, 0], [0, 0], [None, None]).status is (
        LpStatus.INFEASIBLE
    )
    assert solve_lp([[1]], [1], [1], [2], [1]).status is LpStatus.INFEASIBLE


def test_unbounded():
    solution = solve_lp([[1, -1]], [0], [1, 0], [0, 0], [None, None])
    assert solution.status is LpStatus.UNBOUNDED
    assert solution.optimum is None


def test_redundant_rows():
    solution = solve_lp([[1, 1], [2, 2]], [2, 4], [0, 1], [0, 0], [None, None])
    assert solution.optimum == 2


def test_fixed_variables():
    solution = solve_lp([[1, 1, 1]], [5], [0, 0, 1], [1, 2, 0], [1, None, None])
    assert solution.optimum == 2
    assert solution.vertex == (1, 2, 2)


def test_paper_relaxation(model, polarization, torus_curves):
    problems = build_constraints(model, torus_curves, polarization, 3)
    solution = lp_max(problems[E1])
    assert solution.optimum == 24


def test_paper_zero(model, polarization, torus_curves):
    problems = build_constraints(model, torus_curves, polarization, 0)
    assert lp_max(problems[0]).optimum == 0


@settings(max_examples=1000, deadline=None)
@given(boxed_problems())
def test_relaxation_bounds_integer_points(problem):
    solution = lp_max(problem)
    assert solution.status is LpStatus.OPTIMAL
    assert all(0 <= x <= u for x, u in zip(solution.vertex, problem.box_upper))
    for row, b in zip(problem.matrix, problem.rhs):
        assert sum(a * x for a, x in zip(row, solution.vertex)) == b
    best = max(point[problem.objective_index] for point in integer_points(problem))
    assert solution.optimum >= best
