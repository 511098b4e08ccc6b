from itertools import product
from typing import Dict, Tuple

import pytest
from hypothesis import strategies as st

from alpha_calc.alpha import AlphaResult, IlpProblem, alpha_sequence
from alpha_calc.builder import PAPER_TORUS_CURVES, SurfaceModel, paper_surface
from alpha_calc.lattice import DivisorClass

# rows and columns ordered Zt2, Ft, Et1, Et2, Et3, Et4, E1, E2
PAPER_MATRIX = [
    [-2, 1, 1, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, -2, 0, 0, 0, 1, 0],
    [1, 0, 0, -2, 0, 0, 0, 1],
    [1, 0, 0, 0, -1, 0, 0, 0],
    [1, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0, -1, 0],
    [0, 0, 0, 1, 0, 0, 0, -1],
]

PAPER_L_INTERSECTIONS = {
    "Zt2": 1, "Ztm2": 1, "Ft": 4,
    "Et1": 1, "Ft1": 1, "E1": 1,
    "Et2": 1, "Ft2": 1, "E2": 1,
    "Et3": 2, "Ft3": 2, "Et4": 2, "Ft4": 2,
}  # fmt: skip

# index of E1 in the torus curve order
E1 = 10


@pytest.fixture(scope="module")
def paper() -> Tuple[SurfaceModel, DivisorClass]:
    return paper_surface()


@pytest.fixture(scope="module")
def model(paper) -> SurfaceModel:
    return paper[0]


@pytest.fixture(scope="module")
def polarization(paper) -> DivisorClass:
    return paper[1]


@pytest.fixture(scope="module")
def torus_curves() -> Tuple[str, ...]:
    return PAPER_TORUS_CURVES


@pytest.fixture(scope="session")
def alpha_results() -> Dict[int, AlphaResult]:
    model, polarization = paper_surface()
    results = alpha_sequence(model, PAPER_TORUS_CURVES, polarization, range(1, 21))
    return {result.k: result for result in results}


@st.composite
def boxed_problems(draw):
    rows = draw(st.integers(min_value=1, max_value=2))
    cols = draw(st.integers(min_value=2, max_value=4))
    matrix = [[draw(st.integers(-3, 3)) for _ in range(cols)] for _ in range(rows)]
    upper = [draw(st.integers(0, 3)) for _ in range(cols)]
    point = [draw(st.integers(0, u)) for u in upper]
    rhs = [sum(a * x for a, x in zip(row, point)) for row in matrix]
    objective_index = draw(st.integers(0, cols - 1))
    return IlpProblem(
        matrix=tuple(tuple(row) for row in matrix),
        rhs=tuple(rhs),
        objective_index=objective_index,
        box_upper=tuple(upper),
    )


def integer_points(problem):
    return [
        list(point)
        for point in product(*(range(u + 1) for u in problem.box_upper))
        if problem.is_feasible(point)
    ]
