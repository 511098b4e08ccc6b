from pytest import mark

from alpha_calc.errors import (
    AlphaCalcError,
    BasisMismatchError,
    DegenerateFormError,
    DuplicateLabelError,
    InfeasibleError,
    NonIntegralError,
    NonSpanningError,
    OracleRangeError,
    RealizabilityError,
    SurfaceSpecError,
    UnboundedError,
    UnknownLabelError,
)


@mark.parametrize(
    "error",
    [
        BasisMismatchError("F2+6", "F2+0"),
        UnknownLabelError("X"),
        DuplicateLabelError("X"),
        RealizabilityError("A", "B", 0, 1),
        DegenerateFormError("singular"),
        NonIntegralError("X"),
        InfeasibleError("integer"),
        UnboundedError("x"),
        NonSpanningError(6, 8),
        OracleRangeError(4, 3),
        SurfaceSpecError(1, 2, "oops"),
    ],
)
def test_hierarchy(error):
    assert isinstance(error, AlphaCalcError)
    assert isinstance(error, ValueError)


def test_messages():
    assert "'F2+6'" in str(BasisMismatchError("F2+6", "F2+0"))
    assert "'F2+0'" in str(BasisMismatchError("F2+6", "F2+0"))
    assert str(SurfaceSpecError(3, 7, "unknown record 'x'")) == "3:7: unknown record 'x'"
    assert str(InfeasibleError("congruence", "detail")) == "infeasible (congruence): detail"
    assert str(InfeasibleError("integer")) == "infeasible (integer)"
    assert "rank 6" in str(NonSpanningError(6, 8))
    assert "k=4" in str(OracleRangeError(4, 3))


def test_payloads():
    error = RealizabilityError("A", "B", 0, 2)
    assert (error.first, error.second, error.pairing, error.required) == ("A", "B", 0, 2)
    spec = SurfaceSpecError(3, 7, "oops")
    assert (spec.line, spec.column, spec.message) == (3, 7, "oops")
    assert NonSpanningError(6, 8).expected == 8
    assert OracleRangeError(4, 3).max_k == 3
