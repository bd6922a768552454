import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heatlab import asymptotics as asy, heattrace as ht, spectra
from heatlab.errors import DomainError

# sums over n evaluated with mpmath.hyp1f1 and mpmath.nsum at 30 digits
E_HALF = -0.026032410526047289895
F_HALF = -0.051603158505458864033


def test_const_field_coefficients_against_mpmath():
    assert asy.const_field_E(0.5) == pytest.approx(E_HALF, rel=1e-12)
    assert asy.const_field_F(0.5) == pytest.approx(F_HALF, rel=1e-12)


def test_const_field_small_field_ratios():
    b = 0.01
    assert -0.110 <= asy.const_field_E(b) / b ** 2 <= -0.100
    assert -0.220 <= asy.const_field_F(b) / b ** 2 <= -0.200


@pytest.mark.parametrize("b", [0.3, 1.0, 2.5])
def test_closed_form_parts_are_even_sums(b):
    assert asy.const_field_C(b) + asy.const_field_C(-b) == pytest.approx(asy.const_field_even_t_coefficient(b),
                                                                        rel=1e-13)
    assert asy.const_field_D(b) + asy.const_field_D(-b) == pytest.approx(asy.const_field_even_t2_coefficient(b),
                                                                        rel=1e-12)


def test_mu_matches_eigenvalues_to_fourth_order():
    b = 1.0
    for n in (50, 100, 200):
        gap = abs(spectra.const_field_eig(n, b) - asy.const_field_mu(n, b))
        assert gap * n ** 4 < 5.0


# t and t^2 coefficients from an 80-digit mpmath interpolation of trace - 1/t
@pytest.mark.parametrize("m, t1, t2", [
    (0, Fraction(1, 15), Fraction(4, 315)),
    (1, Fraction(1, 40), Fraction(-31, 2520)),
    (2, Fraction(-1, 10), Fraction(-11, 126)),
])
def test_sphere_exact_coefficients(m, t1, t2):
    exact = dict(asy.sphere_expansion_exact(m, 3))
    assert exact[-1] == 1
    assert exact[0] == Fraction(1, 3)
    assert exact[1] == t1
    assert exact[2] == t2


def test_sphere_relative_t_coefficient():
    for m in range(5):
        assert asy.sphere_relative_expansion(m).coefficient(1) == pytest.approx(-m * m / 24, abs=1e-15)


def test_cylinder_expansion_series_reproduces_trace():
    # 2 x (AB disk trace) + sum_{p<=12} (a_p^+ + a_p^-) t^p
    nu, t = 0.25, 0.5
    series = 2 * ht.ab_disk_closed(nu, t) + math.fsum(sum(asy.cylinder_ap(nu, p)) * t ** p for p in range(1, 13))
    assert series == pytest.approx(ht.cylinder_trace(nu, t).value, abs=1e-8)


def test_cylinder_branch_sum_identity():
    nu = 0.3
    plus, minus = asy.cylinder_ap(nu, 1)
    assert plus + minus == pytest.approx(-2 * asy.cylinder_a1(nu), rel=1e-13)


def test_cylinder_ap_range():
    with pytest.raises(DomainError):
        asy.cylinder_ap(0.3, 13)


def test_ab_disk_remainder_is_third_order():
    exp = asy.ab_disk_expansion(0.3)
    for t in (0.02, 0.05, 0.1):
        assert abs(ht.ab_disk_closed(0.3, t) - exp(t)) < 0.01 * t ** 3


def test_expansion_ordering_enforced():
    with pytest.raises(ValueError):
        asy.Expansion(tuple([asy.ExpansionTerm(Fraction(2), False, 1.0),
                             asy.ExpansionTerm(Fraction(1), False, 1.0)]), Fraction(3))
    with pytest.raises(ValueError):
        asy.Expansion.build([(3, False, 1.0)], 3)


def test_log_term_allowed_at_remainder_order():
    exp = asy.const_field_expansion(0.5)
    assert exp.coefficient(3, True) == pytest.approx(-0.125)
    assert exp.remainder_order == 3


def test_oscillator_relative_constant():
    exp = asy.oscillator_relative_expansion(spectra.AnisoOscillator(1.0, 0.7, 1.3))
    assert exp.coefficient(0) == pytest.approx(-1 / (24 * 0.7 * 1.3))


def test_toy_expansion_zero_field_matches_geometric_series():
    exp = asy.toy_expansion(0.0, 0.0)
    t = 0.01
    assert abs(exp(t) - 1 / math.expm1(t)) < t ** 3


# -- properties ----------------------------------------------------------------


@given(st.sampled_from([0.1, 0.4, 0.9, 1.7, 3.2]))
def test_E_and_F_even_in_field(b):
    assert asy.const_field_E(b) == pytest.approx(asy.const_field_E(-b), rel=1e-13)
    assert asy.const_field_F(b) == pytest.approx(asy.const_field_F(-b), rel=1e-13)


@given(st.floats(0.01, 0.99))
def test_ab_disk_t_coefficient_symmetric_in_flux(nu):
    a = asy.ab_disk_expansion(nu).coefficient(1)
    assert a == pytest.approx(asy.ab_disk_expansion(1 - nu).coefficient(1), abs=1e-15)


@given(st.integers(0, 6))
def test_sphere_float_and_exact_agree(m):
    exp = asy.sphere_expansion(m)
    for p, v in asy.sphere_expansion_exact(m):
        assert exp.coefficient(p) == pytest.approx(float(v), abs=1e-15)


@pytest.mark.parametrize("b", [0.5, 2.0])
def test_coefficient_sums_stable_under_doubling(b):
    assert asy.const_field_E(b, 8192) == pytest.approx(asy.const_field_E(b, 4096), abs=1e-11)
    assert asy.const_field_F(b, 8192) == pytest.approx(asy.const_field_F(b, 4096), abs=1e-11)
    assert asy.cylinder_a1(0.3, 1e-8) == pytest.approx(asy.cylinder_a1(0.3), abs=1e-8)
