"""Special functions with certified truncation bounds.

Every series evaluator returns a :class:`SeriesValue`: the partial sum, a
bound on the discarded tail, and the number of terms summed. Working
precision is binary64; the bounds cover truncation only, not rounding.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import numpy as np

from .errors import DomainError, NonConvergent

N_MAX = 10_000

Real = Union[float, Fraction]


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value together with its tail bound."""

    value: float | complex
    error_bound: float
    terms_used: int

    def __post_init__(self):
        if not (self.error_bound >= 0.0) or math.isinf(self.error_bound):
            raise ValueError(f"error_bound must be finite and >= 0, got {self.error_bound}")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class ThetaParams:
    """Parameters of the one-sided theta sum sum_n zeta^(l n + d) q^((l n + d)^2)."""

    d: Real
    ell: int
    z: complex
    tau: complex

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("d must be nonnegative")
        if int(self.ell) != self.ell or self.ell < 1:
            raise DomainError("ell must be a positive integer")
        if complex(self.tau).imag <= 0:
            raise DomainError("tau must lie in the upper half-plane")


# -- elementary pieces -------------------------------------------------------


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def gamma(x: float) -> float:
    """Gamma function on the reals (poles raise DomainError)."""
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"gamma has a pole at {x}")
    return math.gamma(x)


# -- Kummer M ----------------------------------------------------------------


def kummer_m(a: float, c: float, z: float, tol: float = 1e-15, n_max: int = N_MAX) -> SeriesValue:
    """Kummer's confluent hypergeometric function M(a, c, z) for 0 < a < c.

    Sums the defining series up to the smallest order N whose Taylor
    remainder bound

        (a)_{N+1} / ((c)_{N+1} (N+1)!) |z|^{N+1} exp(max(z, 0))

    is at most ``tol``. Raises :class:`NonConvergent` if no N <= n_max works.
    """
    if not (0.0 < a < c):
        raise DomainError(f"kummer_m requires 0 < a < c, got a={a}, c={c}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if z == 0:
        return SeriesValue(1.0, 0.0, 1)
    if z < 0:
        # Kummer's transformation avoids the cancellation of the alternating series
        ez = math.exp(z)
        inner = kummer_m(c - a, c, -z, tol / ez, n_max)
        return SeriesValue(ez * inner.value, ez * inner.error_bound, inner.terms_used)
    ez = math.exp(z)
    terms = [1.0]
    term = 1.0
    for r in range(n_max + 1):
        # term holds (a)_r/(c)_r z^r/r!; next one is the remainder scale
        nxt = term * (a + r) / (c + r) * z / (r + 1)
        bound = abs(nxt) * ez
        if bound <= tol:
            return SeriesValue(math.fsum(terms), bound, r + 1)
        terms.append(nxt)
        term = nxt
    raise NonConvergent(f"M({a}, {c}, {z}) needs more than {n_max} terms for tol={tol}")


def kummer_partial_sum(a: float, c: float, z: float, N: int) -> float:
    """sum_{k=0}^{N} (a)_k/(c)_k z^k/k! (no acceleration, no transformation)."""
    terms = [1.0]
    term = 1.0
    for r in range(N):
        term *= (a + r) / (c + r) * z / (r + 1)
        terms.append(term)
    return math.fsum(terms)


def kummer_truncation_bound(a: float, c: float, z: float, N: int) -> float:
    """(a)_{N+1} / ((c)_{N+1} (N+1)!) |z|^{N+1} exp(max(z, 0)), the remainder bound for order N."""
    if not (0.0 < a < c):
        raise DomainError("the bound needs 0 < a < c")
    log_b = (math.lgamma(a + N + 1) - math.lgamma(a) - math.lgamma(c + N + 1) + math.lgamma(c)
             - math.lgamma(N + 2) + max(z, 0.0))
    if z == 0:
        return 0.0
    return math.exp(log_b + (N + 1) * math.log(abs(z)))


def _kummer_vec(a: np.ndarray, c: np.ndarray, z: float, tol: float, n_max: int):
    # z > 0 here, so all terms are positive
    ez = math.exp(z)
    total = np.ones_like(c)
    term = np.ones_like(c)
    for r in range(n_max + 1):
        nxt = term * ((a + r) / (c + r)) * (z / (r + 1))
        bound = nxt * ez
        if bound.max() <= tol:
            return total, bound, r + 1
        total = total + nxt
        term = nxt
    raise NonConvergent(f"vectorized M(a, c, {z}) needs more than {n_max} terms")


def kummer_m_array(a: float, c: np.ndarray, z: float, tol: float = 1e-15,
                   n_max: int = N_MAX) -> tuple[np.ndarray, np.ndarray, int]:
    """Vectorized :func:`kummer_m` over an array of ``c`` values.

    Returns (values, per-element bounds, number of terms). All elements
    share the truncation order of the slowest one.
    """
    c = np.asarray(c, dtype=float)
    if np.any(c <= a) or a <= 0:
        raise DomainError("kummer_m_array requires 0 < a < c")
    if z == 0:
        return np.ones_like(c), np.zeros_like(c), 1
    if z < 0:
        ez = math.exp(z)
        val, bnd, used = _kummer_vec(c - a, c, -z, tol / ez, n_max)
        return ez * val, ez * bnd, used
    return _kummer_vec(np.full_like(c, a), c, z, tol, n_max)


def kummer_m_deriv(a: float, c: float, z: float, order: int = 1, tol: float = 1e-15,
                   n_max: int = N_MAX) -> SeriesValue:
    """z-derivative of M(a, c, z) of the given order via the parameter-shift identity."""
    if order < 1:
        raise DomainError("order must be a positive integer")
    pref = pochhammer(a, order) / pochhammer(c, order)
    shifted = kummer_m(a + order, c + order, z, tol, n_max)
    return SeriesValue(pref * shifted.value, pref * shifted.error_bound, shifted.terms_used)


def laguerre(nu: float, alpha: float, z: float, tol: float = 1e-15) -> SeriesValue:
    """Generalized Laguerre function L_nu^alpha(z) through its Kummer form.

    Nonnegative integer ``nu`` gives the Laguerre polynomial (finite sum).
    Otherwise the Kummer reduction needs 0 < -nu < alpha + 1.
    """
    args = (alpha + nu + 1, alpha + 1, nu + 1)
    if any(x <= 0 and float(x).is_integer() for x in args):
        raise DomainError(f"gamma argument is a nonpositive integer: {args}")
    if float(nu).is_integer() and nu >= 0:
        n = int(nu)
        # L_n^alpha(z) = sum_k (-1)^k binom(n+alpha, n-k) z^k / k!
        terms = []
        for k in range(n + 1):
            binom = gamma(n + alpha + 1) / (math.gamma(n - k + 1) * gamma(alpha + k + 1))
            terms.append((-1) ** k * binom * z ** k / math.factorial(k))
        return SeriesValue(math.fsum(terms), 0.0, n + 1)
    if not (0.0 < -nu < alpha + 1):
        raise DomainError("Kummer reduction needs 0 < -nu < alpha + 1 or integer nu >= 0")
    pref = gamma(alpha + nu + 1) / (gamma(alpha + 1) * gamma(nu + 1))
    m = kummer_m(-nu, alpha + 1, z, tol / abs(pref))
    return SeriesValue(pref * m.value, abs(pref) * m.error_bound, m.terms_used)


# -- Bessel I0 ---------------------------------------------------------------


def _bessel_series(z, tol, n_max, first_k, weight):
    # terms w_k (z/2)^{2k} / (k!)^2 with w_k = weight(k); ratio decreases in k
    x = (z / 2.0) ** 2
    terms = []
    base = 1.0  # (z/2)^{2k}/(k!)^2
    for k in range(n_max + 1):
        if k > 0:
            base *= x / (k * k)
        if k >= first_k:
            terms.append(weight(k) * base)
        nxt_base = base * x / ((k + 1) ** 2)
        # bound on consecutive term ratios beyond k+1, including weight growth
        rho = x / ((k + 2) ** 2) * weight(k + 2) / weight(k + 1)
        if k >= first_k and rho < 1:
            tail = weight(k + 1) * nxt_base / (1.0 - rho)
            if tail <= tol:
                return math.fsum(terms), tail, len(terms)
    raise NonConvergent(f"Bessel series at z={z} needs more than {n_max} terms")


def bessel_i0(z: float, tol: float = 1e-16, n_max: int = N_MAX) -> SeriesValue:
    """Modified Bessel function I_0(z) = sum_k (z/2)^{2k} / (k!)^2."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    if z == 0:
        return SeriesValue(1.0, 0.0, 1)
    value, bound, n = _bessel_series(abs(z), tol, n_max, 0, lambda k: 1.0)
    return SeriesValue(value, bound, n)


def bessel_i0_deriv(z: float, tol: float = 1e-16, n_max: int = N_MAX) -> SeriesValue:
    """I_0'(z) = sum_{k>=1} 2k (z/2)^{2k} / ((k!)^2 z), i.e. I_1(z)."""
    if z == 0:
        return SeriesValue(0.0, 0.0, 1)
    az = abs(z)
    value, bound, n = _bessel_series(az, tol * az, n_max, 1, lambda k: 2.0 * k)
    sign = 1.0 if z > 0 else -1.0
    return SeriesValue(sign * value / az, bound / az, n)


# -- Bernoulli ---------------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(p: int) -> Fraction:
    """Bernoulli number B_p (B_1 = -1/2) from sum_{j<=p} C(p+1, j) B_j = 0."""
    if p < 0:
        raise DomainError("p must be nonnegative")
    with _bernoulli_lock:
        cache = _bernoulli_cache
        while len(cache) <= p:
            q = len(cache)
            acc = sum((math.comb(q + 1, j) * cache[j] for j in range(q)), Fraction(0))
            cache.append(-acc / (q + 1))
        return cache[p]


def bernoulli_polynomial(n: int, x: Real) -> Real:
    """B_n(x) = sum_p C(n, p) B_p x^(n-p).

    Exact (a Fraction) for rational input; a float input is converted
    exactly, summed in rational arithmetic and rounded once.
    """
    exact = isinstance(x, Rational)
    xf = Fraction(x)
    acc = Fraction(0)
    for p in range(n + 1):
        acc += math.comb(n, p) * bernoulli_number(p) * xf ** (n - p)
    return acc if exact else float(acc)


# -- eta / zeta / polylog ----------------------------------------------------


@lru_cache(maxsize=None)
def _borwein_d(n: int) -> tuple[int, ...]:
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i,
                        math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    # all d_k are integers
    return tuple(int(v) for v in d)


def _eta(s: int, n: int = 30) -> tuple[float, float]:
    """Dirichlet eta(s) for integer s >= 2 by Borwein's accelerated alternating sum.

    Returns (value, bound) with bound 3 / (3 + sqrt 8)^n.
    """
    d = _borwein_d(n)
    dn = d[n]
    acc = Fraction(0)
    for k in range(n):
        acc += Fraction((-1) ** k * (d[k] - dn), (k + 1) ** s)
    value = -acc / dn
    return float(value), 3.0 / (3.0 + math.sqrt(8.0)) ** n


_zeta_cache: dict[int, float] = {}
_zeta_lock = threading.Lock()


def zeta_odd(s: int) -> float:
    """Riemann zeta at s = 3 or 5 from the accelerated eta series (cached)."""
    if s not in (3, 5):
        raise DomainError("zeta_odd supports s in {3, 5}")
    with _zeta_lock:
        if s not in _zeta_cache:
            eta, bound = _eta(s)
            factor = 1.0 - 2.0 ** (1 - s)
            assert bound / factor < 1e-16
            _zeta_cache[s] = eta / factor
        return _zeta_cache[s]


def polylog(s: int, x: float, tol: float = 1e-17, n_max: int = 10_000_000) -> SeriesValue:
    """Polylogarithm Li_s(x) = sum_{n>=1} x^n / n^s for real |x| < 1.

    ``s = 1`` uses -log(1 - x). For s >= 2 the endpoint x = -1 is allowed
    and evaluated as -eta(s).
    """
    if s < 1 or int(s) != s:
        raise DomainError("s must be a positive integer")
    if x >= 1 or x < -1:
        raise DomainError(f"polylog needs x in [-1, 1), got {x}")
    if s == 1:
        if x == -1:
            return SeriesValue(-math.log(2.0), 0.0, 1)
        return SeriesValue(-math.log1p(-x), 0.0, 1)
    if x == 0:
        return SeriesValue(0.0, 0.0, 1)
    if x == -1:
        eta, bound = _eta(s)
        return SeriesValue(-eta, bound, 30)
    ax = abs(x)
    logx = math.log(ax)
    # smallest N with |x|^{N+1} / ((N+1)^s (1-|x|)) <= tol
    n = 1
    while True:
        bound = math.exp((n + 1) * logx - s * math.log(n + 1)) / (1.0 - ax)
        if bound <= tol:
            break
        if n > n_max:
            raise NonConvergent(f"Li_{s}({x}) needs more than {n_max} terms")
        n = n * 2 if bound > 1e3 * tol else n + max(1, n // 16)
    k = np.arange(1, n + 1, dtype=float)
    terms = np.exp(k * logx - s * np.log(k))
    if x < 0:
        terms[0::2] *= -1.0
    return SeriesValue(math.fsum(terms), bound, n)


# -- Jacobi partial theta ----------------------------------------------------


def _theta_exponents(p: ThetaParams, n_max: int) -> np.ndarray:
    return p.ell * np.arange(n_max + 1, dtype=float) + float(p.d)


def _theta_tail(p: ThetaParams, n_first: int, deriv: bool) -> float:
    z, tau = complex(p.z), complex(p.tau)
    e = p.ell * n_first + float(p.d)
    log_t = -2.0 * math.pi * (z.imag * e + tau.imag * e * e)
    log_rho = -2.0 * math.pi * (z.imag * p.ell + tau.imag * (2.0 * p.ell * e + p.ell ** 2))
    if deriv:
        log_t += math.log(2.0 * math.pi * e) if e > 0 else -math.inf
        log_rho += math.log1p(p.ell / e) if e > 0 else 0.0
    if log_rho >= 0:
        return math.inf
    return math.exp(log_t) / (-math.expm1(log_rho))


def _theta_auto_n(p: ThetaParams, tol: float, deriv: bool) -> int:
    n = 8
    while _theta_tail(p, n + 1, deriv) > tol:
        n *= 2
        if n > 10_000_000:
            raise NonConvergent("partial theta series needs too many terms")
    return n


def partial_theta(p: ThetaParams, n_max: int | None = None, tol: float = 1e-17) -> SeriesValue:
    """F_{d,l}(z; tau) = sum_{n=0}^{n_max} zeta^{l n + d} q^{(l n + d)^2}, complex valued.

    Powers are taken as exp(2 pi i z e) and exp(2 pi i tau e^2). With
    ``n_max=None`` the order is chosen so that the geometric tail bound is
    below ``tol``.
    """
    if abs(cmath.exp(2j * math.pi * complex(p.tau))) >= 1:
        raise NonConvergent("|q| >= 1")
    if n_max is None:
        n_max = _theta_auto_n(p, tol, deriv=False)
    e = _theta_exponents(p, n_max)
    z, tau = complex(p.z), complex(p.tau)
    terms = np.exp(2j * np.pi * (z * e + tau * e * e))
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return SeriesValue(value, _theta_tail(p, n_max + 1, deriv=False), n_max + 1)


def partial_theta_deriv(p: ThetaParams, n_max: int | None = None, tol: float = 1e-17) -> SeriesValue:
    """d/dz of the partial theta function, summed term by term."""
    if abs(cmath.exp(2j * math.pi * complex(p.tau))) >= 1:
        raise NonConvergent("|q| >= 1")
    if n_max is None:
        n_max = _theta_auto_n(p, tol, deriv=True)
    e = _theta_exponents(p, n_max)
    z, tau = complex(p.z), complex(p.tau)
    terms = 2j * np.pi * e * np.exp(2j * np.pi * (z * e + tau * e * e))
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return SeriesValue(value, _theta_tail(p, n_max + 1, deriv=True), n_max + 1)


@dataclass(frozen=True)
class ThetaExpansion:
    """Small-|tau| expansion of F_{d,l}(z; tau) as a power series in w = 2 pi i l z.

    ``coefficients[j]`` multiplies w^j. Only |z| < 1/(4 l) is admissible.
    """

    d: Fraction
    ell: int
    order: int
    tau: complex
    coefficients: tuple[complex, ...]

    def value_at_zero(self) -> complex:
        return self.coefficients[0]

    def derivative_at_zero(self) -> complex:
        return 2j * math.pi * self.ell * self.coefficients[1]

    def evaluate(self, z: complex) -> complex:
        if abs(z) >= 1.0 / (4 * self.ell):
            raise DomainError(f"|z| must be below 1/(4 l) = {1.0 / (4 * self.ell)}")
        w = 2j * math.pi * self.ell * complex(z)
        total = 0j
        power = 1.0 + 0j
        for j, c in enumerate(self.coefficients):
            term = c * power
            total += term
            if j > 2 and abs(term) <= 1e-17 * max(abs(total), 1e-300):
                break
            power *= w
        return total


def partial_theta_expansion(d: Real, ell: int, N: int, tau: complex, j_max: int = 24) -> ThetaExpansion:
    """Coefficients of the asymptotic expansion of F_{d,l}(z; tau) as tau -> 0.

    c_j = (1/j!) [ Gamma((j+1)/2) / (2 (-2 pi i l^2 tau)^{(j+1)/2})
                   - sum_{k=0}^{N} (2 pi i l^2 tau)^k / k! B_{2k+j+1}(d/l) / (2k+j+1) ]

    with the principal branch for the half-integer power.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("tau must lie in the upper half-plane")
    if N < 0:
        raise DomainError("N must be nonnegative")
    d = Fraction(d)
    x = d / ell
    u = 2j * math.pi * ell * ell * tau
    w = -u
    coeffs = []
    for j in range(j_max + 1):
        head = math.gamma((j + 1) / 2.0) / (2.0 * w ** ((j + 1) / 2.0))
        tail = 0j
        for k in range(N + 1):
            n = 2 * k + j + 1
            tail += u ** k / math.factorial(k) * float(bernoulli_polynomial(n, x) / n)
        coeffs.append((head - tail) / math.factorial(j))
    return ThetaExpansion(d, ell, N, tau, tuple(coeffs))
