from fractions import Fraction

from pytest import mark, raises

from alpha_calc.alpha import closed_form, paper_certificate, verify_certificate
from alpha_calc.errors import BasisMismatchError
from alpha_calc.lattice import DivisorClass
from alpha_calc.lct import EffectiveDivisor, LctValue

EVEN = {"Zt2": 4, "Ztm2": 4, "Et1": 9, "Ft1": 9, "E1": 16, "Et2": 1, "Ft2": 1}
ODD = {"Zt2": 2, "Ztm2": 2, "Et1": 4, "Ft1": 4, "E1": 7, "Et2": 1, "Ft2": 1, "E2": 1}


def test_even_certificate(model, polarization):
    check = verify_certificate(model, EffectiveDivisor(coefficients=EVEN), 2, polarization)
    assert check.equivalent
    assert check.lct == LctValue(value=Fraction(1, 16))


def test_odd_certificate(model, polarization):
    check = verify_certificate(model, EffectiveDivisor(coefficients=ODD), 1, polarization)
    assert check.equivalent
    assert check.lct.value == Fraction(1, 7)


def test_wrong_certificate(model, polarization):
    wrong = EffectiveDivisor(coefficients={**EVEN, "E1": 15})
    assert not verify_certificate(model, wrong, 2, polarization).equivalent


def test_paper_certificate_values():
    assert paper_certificate(2) == EffectiveDivisor(coefficients=EVEN)
    assert paper_certificate(1) == EffectiveDivisor(coefficients=ODD)
    with raises(ValueError):
        paper_certificate(0)


@mark.parametrize("k", range(1, 21))
def test_paper_certificates(model, polarization, k):
    check = verify_certificate(model, paper_certificate(k), k, polarization)
    assert check.equivalent
    assert k * check.lct.value == closed_form(k)


def test_basis_mismatch(model):
    other = DivisorClass(coefficients=(1, 0), basis_id="F2+0")
    with raises(BasisMismatchError):
        verify_certificate(model, paper_certificate(2), 2, other)
