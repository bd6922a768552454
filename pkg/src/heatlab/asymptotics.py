"""Small-t expansion coefficients of the heat traces.

Expansions are lists of terms c * t^p (log t)^e with e in {0, 1}.
Constants that combine pi and odd zeta values are assembled at runtime
from :mod:`heatlab.specfun`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from . import spectra, specfun
from .errors import DomainError, SlowConvergence

PI = math.pi


@dataclass(frozen=True)
class ExpansionTerm:
    power: Fraction
    has_log: bool
    coefficient: float

    def __call__(self, t: float) -> float:
        value = self.coefficient * t ** float(self.power)
        return value * math.log(t) if self.has_log else value


@dataclass(frozen=True)
class Expansion:
    terms: tuple[ExpansionTerm, ...]
    remainder_order: Fraction
    model: object = None

    def __post_init__(self):
        keys = [(x.power, x.has_log) for x in self.terms]
        if keys != sorted(set(keys)):
            raise ValueError("terms must be sorted by (power, has_log) without duplicates")
        # t^p log t still dominates an O(t^p) remainder
        if any(x.power > self.remainder_order or (x.power == self.remainder_order and not x.has_log)
               for x in self.terms):
            raise ValueError("every term must dominate the remainder")

    @classmethod
    def build(cls, pairs: Iterable[tuple], remainder_order, model=None,
              keep_zero: bool = False) -> "Expansion":
        """From (power, has_log, coefficient) triples; coefficients on equal keys are added."""
        acc: dict[tuple[Fraction, bool], float] = {}
        for power, has_log, coef in pairs:
            key = (Fraction(power), bool(has_log))
            acc[key] = acc.get(key, 0.0) + float(coef)
        terms = tuple(ExpansionTerm(p, lg, c) for (p, lg), c in sorted(acc.items())
                      if keep_zero or c != 0.0)
        return cls(terms, Fraction(remainder_order), model)

    def __call__(self, t: float) -> float:
        return math.fsum(term(t) for term in self.terms)

    def coefficient(self, power, has_log: bool = False) -> float:
        key = (Fraction(power), has_log)
        for term in self.terms:
            if (term.power, term.has_log) == key:
                return term.coefficient
        return 0.0

    def basis(self) -> list[tuple[Fraction, bool]]:
        return [(x.power, x.has_log) for x in self.terms]

    def __sub__(self, other: "Expansion") -> "Expansion":
        pairs = [(x.power, x.has_log, x.coefficient) for x in self.terms]
        pairs += [(x.power, x.has_log, -x.coefficient) for x in other.terms]
        return Expansion.build(pairs, min(self.remainder_order, other.remainder_order), self.model)


# -- toy model and disk-type models --------------------------------------------


def toy_expansion(alpha: float, beta: float) -> Expansion:
    """Expansion of sum_{n>=1} exp(-t(n + alpha + beta/n))."""
    a, b = alpha, beta
    return Expansion.build([
        (-1, False, 1.0),
        (0, False, -(a + 0.5)),
        (1, True, b),
        (1, False, (1 + 6 * a + 6 * a * a) / 12.0),
        (2, True, -a * b),
        (2, False, -(a + 3 * a * a + 2 * a ** 3 + 6 * b - b * b * PI ** 2) / 12.0),
    ], 3)


def ab_disk_expansion(nu: float) -> Expansion:
    nu = spectra._reduce_flux(nu)
    return Expansion.build([(-1, False, 2.0), (1, False, 1 / 6 - nu + nu * nu)], 3,
                           spectra.AbDisk(nu))


def _geometric_j_tail(r: float, J: int, scale: float = 1.0) -> float:
    # scale * sum_{j>J} (j+1) r^j
    k = J + 1
    return scale * r ** k * ((k + 1) - k * r) / (1.0 - r) ** 2


def _pair_modes(nu, J):
    j = np.arange(J + 1, dtype=float)
    return np.concatenate([j + 1.0 - nu, j + nu])


def _coth_minus_one_sum(nu: float, a: float, tol: float, n_cap: int = 10_000_000) -> tuple[float, int]:
    """sum_{k in Z} s (coth(a s) - 1), s = |k - nu|, with the s = 0 term read as 1/a."""
    # s (coth(as) - 1) = 2 s e^{-2as} / (1 - e^{-2as}), decreasing in s; both modes of
    # shell j have s >= j, so the tail past J is <= 2 sum_{j>J} 2 j e^{-2aj} / (1 - e^{-2a})
    r = math.exp(-2.0 * a)
    scale = 4.0 / (-math.expm1(-2.0 * a))
    J = 8
    while _geometric_j_tail(r, J, scale) > tol:
        J *= 2
        if J > n_cap:
            raise DomainError("coefficient sum needs too many terms")
    s = _pair_modes(nu, J)
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.exp(-2.0 * a * s)
        terms = np.where(s == 0, 1.0 / a, -2.0 * s * e / np.expm1(-2.0 * a * s))
    return math.fsum(terms), int(s.size)


def cylinder_a1(nu: float, tol: float = 1e-15) -> float:
    """sum_k |k - nu| (coth(2|k - nu|) - 1)."""
    nu = spectra._reduce_flux(nu)
    if nu == 0:
        raise DomainError("nu must lie in (0, 1)")
    return _coth_minus_one_sum(nu, 2.0, tol)[0]


def cylinder_ap(nu: float, p: int, tol: float = 1e-15) -> tuple[float, float]:
    """(a_p^+, a_p^-) = ((-1)^p/p!) sum_k ((lambda_k^pm)^p - |k-nu|^p) on both cylinder branches."""
    nu = spectra._reduce_flux(nu)
    if nu == 0:
        raise DomainError("nu must lie in (0, 1)")
    if not (1 <= p <= 12):
        raise DomainError("p must lie in 1..12")
    # |(lambda^pm)^p - s^p| <= p s^p u (1+u)^{p-1} with u <= 2e^{-2s}/(1-e^{-2}); for s >= j,
    # shell j contributes at most 2 * const * (j+1)^p e^{-2j}
    const = 2.0 * p * (2.0 / (1.0 - math.exp(-2.0))) * (1.0 + 2.0 * math.exp(-2.0) / (1.0 - math.exp(-2.0))) ** (p - 1)

    def tail(J):
        if J < p:
            return math.inf
        g = (J + 2) ** p * math.exp(-2.0 * (J + 1))
        rho = ((J + 3) / (J + 2)) ** p * math.exp(-2.0)
        return const * g / (1.0 - rho)

    J = max(p, 8)
    while tail(J) > tol:
        J += 8
    s = _pair_modes(nu, J)
    e = np.exp(-2.0 * s)
    up = -2.0 * e / np.expm1(-2.0 * s)      # coth(s) - 1
    down = -2.0 * e / (1.0 + e)              # tanh(s) - 1
    sp = s ** p
    plus = sp * np.expm1(p * np.log1p(up))
    minus = sp * np.expm1(p * np.log1p(down))
    sign = (-1) ** p / math.factorial(p)
    return sign * math.fsum(plus), sign * math.fsum(minus)


def cylinder_expansion(nu: float, order: int = 1, tol: float = 1e-15) -> Expansion:
    """Two copies of the AB disk expansion plus sum_p (a_p^+ + a_p^-) t^p, p <= order.

    The AB disk part is exact through t^2 (its next term is t^3), so
    ``order`` above 2 is capped there.
    """
    nu = spectra._reduce_flux(nu)
    pairs = [(-1, False, 4.0), (1, False, 2 * (1 / 6 - nu + nu * nu))]
    for p in range(1, min(order, 2) + 1):
        pairs.append((p, False, sum(cylinder_ap(nu, p, tol))))
    return Expansion.build(pairs, min(order, 2) + 1, spectra.Cylinder(nu))


def annulus_a1(nu: float, R: float, tol: float = 1e-15) -> float:
    """-(1 + 1/R) sum_m |m - nu| (coth(a|m - nu|) - 1), R = exp(-a)."""
    return (1.0 + 1.0 / R) * annulus_partial_a1(nu, R, tol)


def annulus_partial_a1(nu: float, R: float, tol: float = 1e-15) -> float:
    """-sum_m |m - nu| (coth(a|m - nu|) - 1), R = exp(-a)."""
    if not (0.0 < R < 1.0):
        raise DomainError("R must lie in (0, 1)")
    nu = spectra._reduce_flux(nu)
    a = -math.log(R)
    if a < 0.1:
        warnings.warn(f"a = {a:.3g} < 0.1: the coefficient sum needs about {int(20 / a)} terms",
                      SlowConvergence, stacklevel=2)
    return -_coth_minus_one_sum(nu, a, tol)[0]


def annulus_expansion(model) -> Expansion:
    """Leading two terms of the annulus trace (full or partial map)."""
    nu, R = model.nu, model.R
    poly = 1 / 6 - nu + nu * nu
    if model.kind == "annulus-full":
        return Expansion.build([(-1, False, 2.0 + 2.0 * R),
                                (1, False, (1.0 + R) * poly / R + annulus_a1(nu, R))], 2, model)
    if model.kind == "annulus-partial":
        return Expansion.build([(-1, False, 2.0), (1, False, poly + annulus_partial_a1(nu, R))],
                               2, model)
    raise DomainError("annulus_expansion needs an annulus model")


# -- constant field ------------------------------------------------------------


def const_field_gamma(n, b):
    """2b (1/(2n) + (b-1)/(2n^2) + (2b^2 - 7b + 2)/(4n^3)); mu_n = n - b + gamma_n."""
    n = np.asarray(n, dtype=float)
    return 2.0 * b * (1.0 / (2 * n) + (b - 1.0) / (2 * n ** 2) + (2 * b * b - 7 * b + 2) / (4 * n ** 3))


def const_field_mu(n: int, b: float) -> float:
    if n < 1:
        raise DomainError("n must be a positive integer")
    return float(n - b + const_field_gamma(n, b))


def const_field_C(b: float) -> float:
    z3 = specfun.zeta_odd(3)
    return (-3 * b + 3 * b ** 2 + (b - b ** 2) * PI ** 2 - (6 * b - 21 * b ** 2 + 6 * b ** 3) * z3) / 6.0


def const_field_D(b: float) -> float:
    z3, z5 = specfun.zeta_odd(3), specfun.zeta_odd(5)
    total = math.fsum([
        -10710 * b + 5670 * b ** 2 + 1260 * b ** 3,
        (1260 * b - 2520 * b ** 2) * PI ** 2,
        (126 * b ** 2 - 378 * b ** 3 + 126 * b ** 4) * PI ** 4,
        (4 * b ** 2 - 28 * b ** 3 + 57 * b ** 4 - 28 * b ** 5 + 4 * b ** 6) * PI ** 6,
        -(15120 * b ** 2 - 34020 * b ** 3 + 7560 * b ** 4) * z3,
        -(7560 * b ** 2 - 34020 * b ** 3 + 34020 * b ** 4 - 7560 * b ** 5) * z5,
    ])
    return total / 7560.0


def const_field_even_t_coefficient(b: float) -> float:
    """The closed-form part of the t coefficient, equal to C(b) + C(-b)."""
    return (1 - PI ** 2 / 3 + 7 * specfun.zeta_odd(3)) * b * b


def const_field_even_t2_coefficient(b: float) -> float:
    """The closed-form part of the t^2 coefficient, equal to D(b) + D(-b)."""
    z3, z5 = specfun.zeta_odd(3), specfun.zeta_odd(5)
    c2 = 5670 - 2520 * PI ** 2 + 126 * PI ** 4 + 4 * PI ** 6 - 15120 * z3 - 7560 * z5
    c4 = 126 * PI ** 4 + 57 * PI ** 6 - 7560 * z3 - 34020 * z5
    c6 = 4 * PI ** 6
    return (c2 * b ** 2 + c4 * b ** 4 + c6 * b ** 6) / 3780.0


SUM_TERMS = 4096


def _sum_with_tail(terms: np.ndarray, p: int) -> tuple[float, float]:
    """sum_{n>=1} of a sequence known for n <= N that behaves like A/n^p + B/n^{p+1}.

    A and B are read off the last two octaves; the tail is added through
    Hurwitz zeta values. Returns (sum, |B-term of the tail|) as a rough
    size of the correction's uncertainty.
    """
    N = terms.size
    n1, n2 = N, N // 2
    y1, y2 = terms[n1 - 1] * n1 ** p, terms[n2 - 1] * n2 ** p
    # y = A + B/n through the two sample points
    B = (y1 - y2) / (1.0 / n1 - 1.0 / n2)
    A = y1 - B / n1
    tail_a = A * hurwitz_zeta(p, N + 1)
    tail_b = B * hurwitz_zeta(p + 1, N + 1)
    return math.fsum(terms) + tail_a + tail_b, abs(tail_b)


@lru_cache(maxsize=512)
def const_field_sums(b: float, n_terms: int = SUM_TERMS) -> dict:
    """sum_n (lambda_n - mu_n) and (1/2) sum_n (lambda_n^2 - mu_n^2) at field b.

    Computed with n_terms terms plus an asymptotic tail estimate (the
    summands decay like n^-4 and n^-3 respectively).
    """
    if b == 0:
        return {"delta": 0.0, "delta_sq": 0.0, "tail_uncertainty": 0.0}
    n = np.arange(1, n_terms + 1, dtype=float)
    ratio = spectra.const_field_ratio_terms(b, n_terms)
    gam = const_field_gamma(n, b)
    delta = ratio - gam
    lam = n - b + ratio
    mu = n - b + gam
    s1, u1 = _sum_with_tail(delta, 4)
    s2, u2 = _sum_with_tail(0.5 * delta * (lam + mu), 3)
    return {"delta": s1, "delta_sq": s2, "tail_uncertainty": max(u1, u2)}


def const_field_E(b: float, n_terms: int = SUM_TERMS) -> float:
    """t coefficient of the relative trace for the constant field b."""
    lam0 = spectra.const_field_lambda0_bessel(b)
    plus, minus = const_field_sums(b, n_terms), const_field_sums(-b, n_terms)
    return math.fsum([const_field_even_t_coefficient(b), -lam0, -plus["delta"], -minus["delta"]])


def const_field_F(b: float, n_terms: int = SUM_TERMS) -> float:
    """t^2 coefficient of the relative trace for the constant field b."""
    lam0 = spectra.const_field_lambda0_bessel(b)
    plus, minus = const_field_sums(b, n_terms), const_field_sums(-b, n_terms)
    return math.fsum([const_field_even_t2_coefficient(b), 0.5 * lam0 * lam0,
                      plus["delta_sq"], minus["delta_sq"]])


def const_field_sum_coefficients(h: float = 0.02, levels: int = 4) -> tuple[float, float]:
    """Linear and quadratic b-coefficients of sum_n (lambda_n(b) - mu_n(b)).

    Richardson extrapolation on b = h, h/2, ...: the odd part S(b) - S(-b)
    over 2b gives the linear coefficient, the even part over 2b^2 the
    quadratic one; both are even functions of b, so the error has only
    even powers of b.
    """
    bs = [h / 2 ** k for k in range(levels)]
    odd, even = [], []
    for b in bs:
        sp, sm = const_field_sums(b)["delta"], const_field_sums(-b)["delta"]
        odd.append((sp - sm) / (2 * b))
        even.append((sp + sm) / (2 * b * b))
    return _richardson(odd), _richardson(even)


def _richardson(values: list[float]) -> float:
    # values at h, h/2, h/4, ... with error in powers h^2, h^4, ...
    table = list(values)
    for level in range(1, len(table)):
        factor = 4.0 ** level
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    return table[0]


def const_field_expansion(b: float, absolute: bool = False, extended: bool = False,
                        L: float = 4.0) -> Expansion:
    """Relative trace expansion t E(b) + t^2 F(b) - (b^2/2) t^3 log t.

    ``extended`` adds the -b^2 t^4 log t term. ``absolute`` adds the field-free
    trace coth(t/2) = 2/t + t/6 + ..., giving the expansion of the full trace.
    """
    if not abs(b) <= L:
        raise DomainError(f"|b| must be at most {L}")
    model = spectra.ConstFieldDisk(b, L)
    if b == 0:
        pairs = []
    else:
        pairs = [(1, False, const_field_E(b)), (2, False, const_field_F(b)), (3, True, -b * b / 2)]
        if extended:
            pairs.append((4, True, -b * b))
    if absolute:
        pairs += [(-1, False, 2.0), (1, False, 1.0 / 6.0)]
    return Expansion.build(pairs, 4 if extended else 3, model)


# -- sphere and oscillators ----------------------------------------------------


def sphere_expansion_exact(m: int, N: int = 3) -> list[tuple[int, Fraction]]:
    """Exact rational coefficients (power, value) of the sphere trace through t^N."""
    if m < 0 or N < 0:
        raise DomainError("m and N must be nonnegative")
    d = Fraction(m + 1, 2)
    c = Fraction(m * m + 1, 4)
    bracket = [-Fraction((-1) ** k, math.factorial(k + 1)) * specfun.bernoulli_polynomial(2 * k + 2, d)
               for k in range(N + 1)]
    exp_coef = [c ** j / math.factorial(j) for j in range(N + 2)]
    out = [(-1, Fraction(1))]
    for p in range(N + 1):
        # 1/t times c^{p+1}/(p+1)! plus bracket_k times c^j/j! with k + j = p
        value = exp_coef[p + 1] + sum(bracket[k] * exp_coef[p - k] for k in range(p + 1))
        out.append((p, value))
    return out


def sphere_expansion(m: int, N: int = 3) -> Expansion:
    pairs = [(p, False, float(v)) for p, v in sphere_expansion_exact(m, N)]
    return Expansion.build(pairs, N + 1, spectra.SphereLandau(m), keep_zero=True)


def sphere_relative_expansion(m: int, N: int = 3) -> Expansion:
    return sphere_expansion(m, N) - sphere_expansion(0, N)


def oscillator_expansion(model) -> Expansion:
    if model.kind == "iso-oscillator":
        b = model.b
        return Expansion.build([(-2, False, 0.25), (0, False, -(2 + b * b) / 24.0),
                                (2, False, (1 + 7 * b * b / 6 + 7 * b ** 4 / 24) / 60.0)], 4, model)
    if model.kind == "aniso-oscillator":
        hi, lo = spectra.aniso_oscillator_lambda_pm(model.b, model.k1, model.k2)
        root = math.sqrt(hi * lo)
        return Expansion.build([(-2, False, 0.25 / root), (0, False, -(hi + lo) / (24.0 * root))],
                               2, model)
    raise DomainError("oscillator_expansion needs an oscillator model")


def oscillator_relative_expansion(model) -> Expansion:
    if model.kind == "iso-oscillator":
        return Expansion.build([(0, False, -model.b ** 2 / 24.0)], 2, model)
    if model.kind == "aniso-oscillator":
        return Expansion.build([(0, False, -model.b ** 2 / (24.0 * model.k1 * model.k2))], 2, model)
    raise DomainError("oscillator_relative_expansion needs an oscillator model")


def expansion_for(model, relative: bool = False) -> Expansion:
    """Dispatch to the expansion of a model (used by the CLI)."""
    kind = model.kind
    if kind == "ab-disk":
        exp = ab_disk_expansion(model.nu)
        return exp - ab_disk_expansion(0.0) if relative else exp
    if kind == "metric-disk":
        th, nu = model.theta1, model.nu
        exp = Expansion.build([(-1, False, 2.0 * th), (1, False, (1 / 6 - nu + nu * nu) / th)], 3, model)
        return exp - Expansion.build([(-1, False, 2.0 * th), (1, False, 1 / (6 * th))], 3) if relative else exp
    if kind == "cylinder":
        return cylinder_expansion(model.nu)
    if kind in ("annulus-full", "annulus-partial"):
        return annulus_expansion(model)
    if kind == "const-field-disk":
        return const_field_expansion(model.b, absolute=not relative, L=model.L)
    if kind in ("iso-oscillator", "aniso-oscillator"):
        return oscillator_relative_expansion(model) if relative else oscillator_expansion(model)
    if kind == "sphere-landau":
        return sphere_relative_expansion(model.m) if relative else sphere_expansion(model.m)
    raise DomainError(f"no expansion available for {kind!r}")
