from pytest import raises

from alpha_calc.ample import NO_ASSERTION, SELF_INTERSECTION, nakai_moishezon_check
from alpha_calc.builder import hirzebruch
from alpha_calc.errors import UnknownLabelError
from alpha_calc.lattice import DivisorClass
from tests.conftest import PAPER_L_INTERSECTIONS


def test_paper_ample(model, polarization, torus_curves):
    labels = list(torus_curves) + ["Ft"]
    report = nakai_moishezon_check(model, polarization, labels)
    assert report.passed
    assert report.verdict == "pass"
    assert report.self_intersection == 22
    assert report.per_curve == PAPER_L_INTERSECTIONS
    assert report.failures == ()
    assert "complete" in report.assertion_note


def test_zero_class(model):
    zero = DivisorClass.zero(model.rank, model.basis_id)
    report = nakai_moishezon_check(model, zero, [])
    assert report.verdict == "fail"
    assert report.failures == (SELF_INTERSECTION,)


def test_negative_polarization(model, polarization, torus_curves):
    report = nakai_moishezon_check(model, -polarization, torus_curves)
    assert not report.passed
    assert report.self_intersection == 22
    assert report.failures == tuple(torus_curves)


def test_no_assertion():
    model = hirzebruch(1)
    report = nakai_moishezon_check(model, model.curve("F"), ["Z1", "F"])
    assert report.failures == (SELF_INTERSECTION, "F")
    assert report.assertion_note == NO_ASSERTION


def test_unknown_curve(model, polarization):
    with raises(UnknownLabelError):
        nakai_moishezon_check(model, polarization, ["Nope"])
