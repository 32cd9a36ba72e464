from fractions import Fraction

import pytest

from ulat.qseries import (REGISTRY, FourierSeries, delta, divisor_sums, e2_level2, e3_level3,
                          e4_level2, eisenstein, eta, eta_power, parse_series, rescale_variable,
                          s6_level3, serre_derivative, theta)

ORDER = 30


def naive_delta(n):
    """q prod (1 - q^m)^24 by repeated polynomial multiplication."""
    c = [0] * (n + 1)
    c[1] = 1
    for m in range(1, n + 1):
        for _ in range(24):
            for k in range(n, m - 1, -1):
                c[k] -= c[k - m]
    return c


def coeffs(f, n):
    return [f[k] for k in range(n + 1)]


def test_delta_matches_product_oracle():
    assert coeffs(delta(ORDER), ORDER) == naive_delta(ORDER)
    assert coeffs(eta_power(24, ORDER), ORDER) == naive_delta(ORDER)


def test_eta_valuation():
    for k in (1, 3, 6, 12, 24):
        assert eta_power(k, 10).valuation() == Fraction(k, 24)
    assert eta(10).valuation() == Fraction(1, 24)


def test_eisenstein_leading_terms():
    assert coeffs(eisenstein(2, 5), 3) == [1, -24, -72, -96]
    assert coeffs(eisenstein(4, 5), 2) == [1, 240, 2160]
    assert coeffs(eisenstein(6, 5), 2) == [1, -504, -16632]


def test_e4_cubed_minus_e6_squared():
    E4, E6 = eisenstein(4, ORDER), eisenstein(6, ORDER)
    assert (E4 ** 3 - E6 ** 2).equal_to(delta(ORDER).scale(1728))


def test_level_two_and_three_forms():
    assert coeffs(e4_level2(6), 3) == [1, 0, 240, 0]
    assert coeffs(e2_level2(6), 3) == [1, 24, 24, 96]
    assert coeffs(s6_level3(6), 3) == [0, 1, -6, 9]
    assert coeffs(e3_level3(6), 2) == [1, -36, -54]
    # 2E2(2t) - E2(t) = 1 + 24 sum sigma_1^odd(n) q^n
    s = divisor_sums(1, ORDER)
    odd = [sum(d for d in range(1, n + 1, 2) if n % d == 0) for n in range(ORDER + 1)]
    f = e2_level2(ORDER)
    assert all(f[n] == 24 * odd[n] for n in range(1, ORDER + 1))
    assert s[6] == 12


def test_rescale_variable():
    E4 = eisenstein(4, 10)
    assert rescale_variable(E4, 1).equal_to(E4)
    assert rescale_variable(E4, 2).equal_to(e4_level2(10), order=10)


def test_serre_derivative_identities():
    E4, E6 = eisenstein(4, ORDER), eisenstein(6, ORDER)
    assert serre_derivative(E4, 4).equal_to(E6.scale(Fraction(-1, 3)))
    assert serre_derivative(E6, 6).equal_to((E4 * E4).scale(Fraction(-1, 2)))
    assert serre_derivative(delta(ORDER), 12).is_zero()
    assert serre_derivative(FourierSeries.constant(5, ORDER, weight=0), 0).is_zero()
    # theta(Delta) = E2 Delta
    assert theta(delta(ORDER)).equal_to(eisenstein(2, ORDER) * delta(ORDER))


def test_serre_leibniz():
    E4, E6, D = eisenstein(4, ORDER), eisenstein(6, ORDER), delta(ORDER)
    for f, k, g, l in [(E4, 4, E6, 6), (E6, 6, D, 12), (E4, 4, E4, 4)]:
        lhs = serre_derivative(f * g, k + l)
        rhs = serre_derivative(f, k) * g + f * serre_derivative(g, l)
        assert lhs.equal_to(rhs)


def test_truncation_is_monotone():
    a, b = eisenstein(4, 10), eisenstein(6, 20)
    assert (a * b).order <= 10
    assert (a + b).order <= 10


def test_registry_and_expressions():
    assert "E4" in REGISTRY and "s6" in REGISTRY
    f = parse_series("E4^3 - E6^2", 20)
    assert f.proportional_to(delta(20)) == 1728
    with pytest.raises(KeyError):
        REGISTRY.get("nope")


def test_nth_root_and_inverse():
    D = delta(20)
    assert (D.nth_root(24) ** 24).equal_to(D)
    E4 = eisenstein(4, 20)
    one = E4 * E4.inverse()
    assert one.equal_to(FourierSeries.constant(1, 20))
