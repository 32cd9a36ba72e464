from fractions import Fraction

import pytest

from ulat.field import QuadraticField, conjugate, divides, norm, trace, unit_order, units

GAUSS = QuadraticField(-1)
EIS = QuadraticField(-3)


def test_discriminant_and_unit_count():
    for d, D, u in [(-1, -4, 4), (-2, -8, 2), (-3, -3, 6), (-5, -20, 2), (-7, -7, 2)]:
        K = QuadraticField(d)
        assert K.D == D
        assert K.unit_count == u == len(units(K))


def test_rejects_bad_d():
    with pytest.raises(ValueError):
        QuadraticField(-4)
    with pytest.raises(ValueError):
        QuadraticField(5)


def test_conjugate_examples():
    one = GAUSS(1)
    assert conjugate(one) == one
    z = GAUSS.zeta
    assert z == GAUSS.parse("-2+i")
    assert conjugate(z) == GAUSS.parse("-2-i") == GAUSS.D - z
    w = EIS.zeta
    assert conjugate(w) == EIS(EIS.D) - w
    assert conjugate(conjugate(w)) == w


def test_zeta_minimal_polynomial():
    for d in (-1, -2, -3, -5, -7, -11):
        K = QuadraticField(d)
        z = K.zeta
        assert z * z - K.D * z + Fraction(K.D * K.D - K.D, 4) == 0


def test_norm_trace_examples():
    assert norm(GAUSS.parse("1+i")) == 2
    omega = EIS.zeta + 2
    assert omega == EIS.parse("w")
    assert norm(1 + omega) == 3
    for d in (-1, -2, -3, -7):
        K = QuadraticField(d)
        c = K.inverse_different()
        assert trace(c * K.zeta).denominator == 1
        assert trace(c).denominator == 1


def test_units():
    assert set(units(QuadraticField(-5))) == {QuadraticField(-5)(1), QuadraticField(-5)(-1)}
    assert set(units(GAUSS)) == {GAUSS.parse(s) for s in ("1", "i", "-1", "-i")}
    orders = sorted(unit_order(u) for u in units(EIS))
    assert orders == [1, 2, 3, 3, 6, 6]


def test_divides():
    assert divides(GAUSS(1), GAUSS.parse("3-7*i"))
    assert divides(GAUSS.parse("1+i"), GAUSS(2))
    assert not divides(EIS(2), 1 + EIS.parse("w"))
    with pytest.raises(ZeroDivisionError):
        divides(EIS(0), EIS(1))


def test_exact_sqrt_parsing():
    x = EIS.parse("i/sqrt(3)")
    assert x * x == Fraction(-1, 3)
    assert (x * EIS.sqrt_D).is_integral()
