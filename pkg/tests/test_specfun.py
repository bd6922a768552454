import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from heatlab import specfun
from heatlab.errors import DomainError, NonConvergent

# mpmath at 40 digits
KUMMER_ORACLE = [
    ((0.5, 1.5, 2.0), 2.3644538928052092846),
    ((1.3, 2.7, -5.0), 0.18693566472231457897),
    ((2.0, 3.0, -30.0), 0.0022222222222157758597),
    ((0.25, 1.0, 0.1), 1.0258011848225248968),
]

I0_ORACLE = [
    (0.5, 1.0634833707413235193, 0.25789430539089631636),
    (1.0, 1.2660658777520083356, 0.56515910399248502721),
    (3.7, 8.7386175241693969058, 7.4357457965353369258),
    (10.0, 2815.7166284662544715, 2670.9883037012546543),
    (25.0, 5774560606.4663103158, 5657865129.8787013531),
]


@pytest.mark.parametrize("args, expected", KUMMER_ORACLE)
def test_kummer_against_mpmath(args, expected):
    res = specfun.kummer_m(*args)
    assert res.value == pytest.approx(expected, rel=1e-13)
    assert res.error_bound < 1e-12 * max(1.0, abs(expected))


def test_kummer_domain():
    with pytest.raises(DomainError):
        specfun.kummer_m(0.5, 0.4, 1.0)
    with pytest.raises(DomainError):
        specfun.kummer_m(-0.4, 1.2, 1.0)


@pytest.mark.parametrize("x, i0, i1", I0_ORACLE)
def test_bessel_i0_and_derivative(x, i0, i1):
    assert specfun.bessel_i0(x).value == pytest.approx(i0, rel=1e-14)
    assert specfun.bessel_i0_deriv(x).value == pytest.approx(i1, rel=1e-14)


def test_laguerre_values():
    assert specfun.laguerre(3, 0.5, 1.2).value == pytest.approx(-0.8305, rel=1e-13)
    assert specfun.laguerre(5, -0.3, 2.0).value == pytest.approx(0.73827558333333333523, rel=1e-13)
    assert specfun.laguerre(0, 1.0, 4.0).value == 1.0


def test_zeta_constants():
    assert specfun.zeta_odd(3) == pytest.approx(1.2020569031595942854, rel=1e-15)
    assert specfun.zeta_odd(5) == pytest.approx(1.0369277551433699263, rel=1e-15)


@pytest.mark.parametrize("s, x, expected", [
    (2, 0.5, 0.5822405264650125059),
    (3, -0.7, -0.64866632128523545511),
    (4, 0.99, 1.0703241461652291412),
])
def test_polylog_against_mpmath(s, x, expected):
    assert specfun.polylog(s, x).value == pytest.approx(expected, rel=1e-13)


def test_gamma_and_pochhammer():
    assert specfun.gamma(0.3) == pytest.approx(2.9915689876875907446, rel=1e-14)
    assert specfun.pochhammer(0.5, 4) == pytest.approx(6.5625, rel=1e-15)
    assert specfun.pochhammer(2.5, 0) == 1.0


def test_bernoulli_known_values():
    assert specfun.bernoulli_number(0) == 1
    assert specfun.bernoulli_number(1) == Fraction(-1, 2)
    assert specfun.bernoulli_number(12) == Fraction(-691, 2730)
    assert specfun.bernoulli_number(7) == 0
    assert specfun.bernoulli_polynomial(2, Fraction(1, 3)) == Fraction(1, 9) - Fraction(1, 3) + Fraction(1, 6)


def test_partial_theta_against_mpmath():
    p = specfun.ThetaParams(Fraction(1, 3), 2, 0.05, 0.1 + 0.3j)
    res = specfun.partial_theta(p)
    assert abs(res.value - (0.79869869407253689287 + 0.14080578051853687155j)) < 1e-14


def test_theta_params_validation():
    with pytest.raises(DomainError):
        specfun.ThetaParams(0.5, 1, 0.0, 0.1 - 0.2j)
    with pytest.raises(DomainError):
        specfun.ThetaParams(-0.1, 1, 0.0, 0.2j)


def test_theta_expansion_radius():
    exp = specfun.partial_theta_expansion(Fraction(1, 2), 2, 3, 0.01j)
    with pytest.raises(DomainError):
        exp.evaluate(0.13)


# -- properties ----------------------------------------------------------------

# kummer_m is defined for 0 < a < c
a_and_c = st.tuples(st.floats(0.05, 0.95), st.floats(0.3, 6)).map(lambda x: (x[0] * x[1], x[1]))


@given(a_and_c, st.floats(-8, 8), st.integers(0, 25))
def test_kummer_truncation_bound_holds(ac, z, N):
    a, c = ac
    exact = specfun.kummer_m(a, c, z, 1e-17)
    trunc = specfun.kummer_partial_sum(a, c, z, N)
    bound = specfun.kummer_truncation_bound(a, c, z, N)
    slack = 8 * math.ulp(max(abs(exact.value), 1.0)) + exact.error_bound
    assert abs(exact.value - trunc) <= bound + slack


@given(a_and_c, st.floats(-6, 6))
def test_kummer_derivative_identity(ac, z):
    a, c = ac
    # M'(a,c,z) = (a/c) M(a+1,c+1,z), checked against a central difference
    h = 1e-5
    deriv = specfun.kummer_m_deriv(a, c, z).value
    fd = (specfun.kummer_m(a, c, z + h).value - specfun.kummer_m(a, c, z - h).value) / (2 * h)
    assert deriv == pytest.approx(fd, rel=1e-6, abs=1e-7 * math.exp(abs(z)))


@given(a_and_c, st.floats(-10, 10))
def test_kummer_transformation(ac, z):
    # M(a,c,z) = e^z M(c-a,c,-z)
    a, c = ac
    lhs = specfun.kummer_m(a, c, z).value
    rhs = math.exp(z) * specfun.kummer_m(c - a, c, -z).value
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@given(st.floats(0, 30))
def test_i0_even_and_derivative_odd(x):
    assert specfun.bessel_i0(-x).value == specfun.bessel_i0(x).value
    assert specfun.bessel_i0_deriv(-x).value == -specfun.bessel_i0_deriv(x).value


@given(st.floats(-0.95, 0.95))
def test_polylog_order_one_is_log(x):
    assume(abs(x) > 1e-6)
    assert specfun.polylog(1, x).value == pytest.approx(-math.log1p(-x), rel=1e-13)


@given(st.integers(1, 30))
def test_bernoulli_recurrence(n):
    total = sum(math.comb(n + 1, k) * specfun.bernoulli_number(k) for k in range(n + 1))
    assert total == 0


@given(st.integers(1, 14), st.fractions(Fraction(-2), Fraction(2), max_denominator=50))
def test_bernoulli_polynomial_difference(n, x):
    diff = specfun.bernoulli_polynomial(n, x + 1) - specfun.bernoulli_polynomial(n, x)
    assert diff == n * x ** (n - 1)


@given(st.fractions(Fraction(0), Fraction(3), max_denominator=12), st.integers(1, 4),
       st.floats(-0.2, 0.2), st.floats(0.05, 0.6))
def test_partial_theta_tail_bound(d, ell, z, im_tau):
    p = specfun.ThetaParams(d, ell, z, 0.1 + 1j * im_tau)
    short = specfun.partial_theta(p, n_max=4)
    full = specfun.partial_theta(p)
    assert abs(full.value - short.value) <= short.error_bound + full.error_bound + 1e-15


def test_polylog_outside_domain():
    with pytest.raises((DomainError, NonConvergent)):
        specfun.polylog(2, 1.5)
