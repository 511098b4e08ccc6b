from fractions import Fraction

from pytest import mark, raises
from sympy import Matrix

from alpha_calc.alpha import (
    ORACLE_MAX_K,
    alpha_k,
    alpha_sequence,
    build_constraints,
    closed_form,
    infimum,
    oracle_alpha_k,
    verify_certificate,
)
from alpha_calc.builder import divisor_class, hirzebruch
from alpha_calc.errors import InfeasibleError, NonSpanningError, OracleRangeError

K_RANGE = range(1, 21)


@mark.parametrize(
    "k,expected",
    [(1, Fraction(1, 7)), (2, Fraction(1, 8)), (3, Fraction(3, 23)), (7, Fraction(7, 55))],
)
def test_closed_form(k, expected):
    assert closed_form(k) == expected


def test_closed_form_range():
    with raises(ValueError):
        closed_form(0)


@mark.parametrize("k", K_RANGE)
def test_alpha_matches_closed_form(alpha_results, k):
    result = alpha_results[k]
    assert result.alpha_k == closed_form(k)
    assert result.m_star == (8 * k if k % 2 == 0 else 8 * k - 1)
    assert result.achieved_by == "E1"


@mark.parametrize("k", K_RANGE)
def test_witness_is_equivalent(model, polarization, alpha_results, k):
    result = alpha_results[k]
    check = verify_certificate(model, result.witness, k, polarization)
    assert check.equivalent
    assert k * check.lct.value == result.alpha_k


def test_not_monotone(alpha_results):
    assert alpha_results[1].alpha_k > alpha_results[2].alpha_k < alpha_results[3].alpha_k


def test_lower_bound(alpha_results):
    assert all(result.alpha_k >= Fraction(1, 8) for result in alpha_results.values())
    assert all(
        result.alpha_k > Fraction(1, 8) for k, result in alpha_results.items() if k % 2
    )


def test_infimum(alpha_results):
    low, attained = infimum([alpha_results[k] for k in K_RANGE])
    assert low == Fraction(1, 8)
    assert attained == list(range(2, 21, 2))
    with raises(ValueError):
        infimum([])


@mark.parametrize("k", range(1, ORACLE_MAX_K + 1))
def test_oracle_agrees(model, polarization, torus_curves, alpha_results, k):
    assert oracle_alpha_k(model, torus_curves, polarization, k) == alpha_results[k]


def test_oracle_range(model, polarization, torus_curves):
    with raises(OracleRangeError) as error:
        oracle_alpha_k(model, torus_curves, polarization, 4)
    assert error.value.k == 4
    assert error.value.max_k == ORACLE_MAX_K


def test_unique_point():
    model = hirzebruch(0)
    labels = ["Z0", "F"]
    divisor = divisor_class(model, {"Z0": 1, "F": 2})
    for k in (1, 2):
        result = alpha_k(model, labels, divisor, k)
        assert result.alpha_k == Fraction(1, 2)
        assert result.achieved_by == "F"
        assert result == oracle_alpha_k(model, labels, divisor, k)


def test_not_effective():
    model = hirzebruch(0)
    divisor = divisor_class(model, {"F": -1})
    with raises(InfeasibleError):
        alpha_k(model, ["Z0", "F"], divisor, 1)


def test_non_spanning(model, polarization):
    labels = ["Zt2", "Ztm2", "Et1", "Et2", "Ft1", "Ft2", "E1", "E2"]
    with raises(NonSpanningError) as error:
        build_constraints(model, labels, polarization, 1)
    assert error.value.expected == 8
    with raises(NonSpanningError):
        alpha_k(model, labels, polarization, 1)


# coefficients on a_1..a_12 (torus curve order) and the right hand side divided by k
IMPLIED_IDENTITIES = [
    ({1: 1, 2: 1}, 4),
    ({4: 2, 5: -1, 9: 1, 12: -1}, 1),
    ({3: 2, 5: -1, 9: 1, 11: -1}, 1),
    ({3: 1, 4: 1, 9: 1, 10: 1}, 5),
    ({5: 1, 6: 1, 7: 1, 8: 1}, 5),
    ({6: 2, 9: 2, 11: 1, 12: 1}, 8),
    ({5: 2, 10: 2, 11: 1, 12: 1}, 8),
]


@mark.parametrize("k", [1, 2, 5])
@mark.parametrize("coefficients,total", IMPLIED_IDENTITIES)
def test_implied_identities(model, polarization, torus_curves, k, coefficients, total):
    problem = build_constraints(model, torus_curves, polarization, k)[0]
    system = Matrix([list(row) + [b] for row, b in zip(problem.matrix, problem.rhs)])
    identity_row = [coefficients.get(i, 0) for i in range(1, 13)]
    assert system.col_join(Matrix([identity_row + [k * total]])).rank() == system.rank()
    # a wrong right hand side leaves the row space
    assert system.col_join(Matrix([identity_row + [k * total + 1]])).rank() > system.rank()


def test_zero_k(model, polarization, torus_curves):
    with raises(ValueError):
        alpha_k(model, torus_curves, polarization, 0)
    problems = build_constraints(model, torus_curves, polarization, 0)
    assert problems[0].is_feasible([0] * len(torus_curves))


def test_sequence_workers(model, polarization, torus_curves, alpha_results):
    results = alpha_sequence(model, torus_curves, polarization, [1, 2], workers=2)
    assert results == [alpha_results[1], alpha_results[2]]


def test_result_json(alpha_results):
    dumped = alpha_results[3].model_dump(mode="json")
    assert dumped["alpha_k"] == "3/23"
    assert dumped["m_star"] == 23
    assert dumped["witness"]["E1"] == "23"
