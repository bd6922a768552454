"""Eigenvalue sequences of the explicitly solvable models.

Each model is a frozen dataclass. :func:`spectrum` wraps one in a
:class:`Spectrum`, which enumerates eigenvalues shell by shell and carries
a linear lower bound used to truncate heat-trace sums rigorously.

Shells: shell ``j`` holds at most ``w0 + w1*j`` eigenvalues (counted with
multiplicity), each at least ``slope*j - offset``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from typing import ClassVar, Union

import numpy as np
from scipy.integrate import solve_ivp

from . import specfun
from .errors import (ConsistencyError, DegenerateIndex, DenominatorVanishes, DomainError,
                     IntegrationFailure, TailBoundUnavailable)

VERIFY_SHELLS = 500


def _reduce_flux(nu: float) -> float:
    r = float(nu) - math.floor(nu)
    return 0.0 if r >= 1.0 else r


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a positive real, got {value}")


# -- models ------------------------------------------------------------------


@dataclass(frozen=True)
class AbDisk:
    nu: float
    kind: ClassVar[str] = "ab-disk"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))


@dataclass(frozen=True)
class MetricDisk:
    nu: float
    theta1: float
    kind: ClassVar[str] = "metric-disk"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))
        _positive("theta1", self.theta1)


@dataclass(frozen=True)
class Cylinder:
    nu: float
    kind: ClassVar[str] = "cylinder"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))
        if self.nu == 0.0:
            raise DomainError("cylinder needs a non-integer flux")


@dataclass(frozen=True)
class AnnulusFull:
    nu: float
    R: float
    kind: ClassVar[str] = "annulus-full"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))
        if not (0.0 < self.R < 1.0):
            raise DomainError(f"R must lie in (0, 1), got {self.R}")

    @property
    def a(self) -> float:
        return -math.log(self.R)


@dataclass(frozen=True)
class AnnulusPartial:
    nu: float
    R: float
    kind: ClassVar[str] = "annulus-partial"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))
        if not (0.0 < self.R < 1.0):
            raise DomainError(f"R must lie in (0, 1), got {self.R}")

    @property
    def a(self) -> float:
        return -math.log(self.R)


@dataclass(frozen=True)
class ConstFieldDisk:
    b: float
    L: float = 4.0
    kind: ClassVar[str] = "const-field-disk"

    def __post_init__(self):
        _positive("L", self.L)
        if not abs(self.b) <= self.L:
            raise DomainError(f"|b| must be at most L={self.L}, got {self.b}")


@dataclass(frozen=True)
class IsoOscillator:
    b: float
    kind: ClassVar[str] = "iso-oscillator"

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise DomainError("b must be finite")


@dataclass(frozen=True)
class AnisoOscillator:
    b: float
    k1: float
    k2: float
    kind: ClassVar[str] = "aniso-oscillator"

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise DomainError("b must be finite")
        _positive("k1", self.k1)
        _positive("k2", self.k2)


@dataclass(frozen=True)
class AbOscillator:
    nu: float
    beta: float
    kind: ClassVar[str] = "ab-oscillator"

    def __post_init__(self):
        object.__setattr__(self, "nu", _reduce_flux(self.nu))
        _positive("beta", self.beta)


@dataclass(frozen=True)
class SphereLandau:
    m: int
    kind: ClassVar[str] = "sphere-landau"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


ModelSpec = Union[AbDisk, MetricDisk, Cylinder, AnnulusFull, AnnulusPartial, ConstFieldDisk,
                  IsoOscillator, AnisoOscillator, AbOscillator, SphereLandau]

MODEL_TYPES = {cls.kind: cls for cls in (AbDisk, MetricDisk, Cylinder, AnnulusFull,
                                          AnnulusPartial, ConstFieldDisk, IsoOscillator,
                                          AnisoOscillator, AbOscillator, SphereLandau)}


def model_params(kind: str) -> tuple[str, ...]:
    """Parameter names accepted by the model ``kind``."""
    try:
        cls = MODEL_TYPES[kind]
    except KeyError:
        raise DomainError(f"unknown model {kind!r}; choose from {sorted(MODEL_TYPES)}") from None
    return tuple(f.name for f in fields(cls))


def model_from_dict(data: dict) -> ModelSpec:
    data = dict(data)
    kind = data.pop("kind", None)
    allowed = model_params(kind)
    unknown = set(data) - set(allowed)
    if unknown:
        raise DomainError(f"parameters {sorted(unknown)} do not apply to model {kind!r}")
    try:
        return MODEL_TYPES[kind](**data)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {kind!r}: {exc}") from None


def model_to_dict(model: ModelSpec) -> dict:
    return {"kind": model.kind, **asdict(model)}


# -- eigenvalue formulas -----------------------------------------------------


def ab_disk_eig(nu: float, k: int) -> float:
    return abs(k - nu)


def metric_disk_eig(nu: float, theta1: float, k: int) -> float:
    _positive("theta1", theta1)
    return abs(k - nu) / theta1


def cylinder_eig(nu: float, k: int, branch: str) -> float:
    """Eigenvalue (k - nu)coth(k - nu) on branch '+' or (k - nu)tanh(k - nu) on '-'."""
    s = k - nu
    if s == 0:
        raise DegenerateIndex(f"k - nu vanishes for k={k}, nu={nu}")
    if branch == "+":
        return s / math.tanh(s)
    if branch == "-":
        return s * math.tanh(s)
    raise DomainError(f"branch must be '+' or '-', got {branch!r}")


def _annulus_s(m, nu, R):
    if not (0.0 < R < 1.0):
        raise DomainError(f"R must lie in (0, 1), got {R}")
    s = abs(m - nu)
    if s == 0:
        raise DegenerateIndex(f"|m - nu| vanishes for m={m}, nu={nu}")
    return s


def annulus_dtn_matrix(m: int, nu: float, R: float) -> np.ndarray:
    """The 2x2 Dirichlet-to-Neumann block of mode m on the annulus R < r < 1."""
    s = _annulus_s(m, nu, R)
    up, down = R ** s, R ** (-s)
    pref = s / (up - down)
    total = up + down
    return pref * np.array([[-total, 2.0], [2.0 / R, -total / R]])


def _inv_sinh_sq(x):
    # 1/sinh(x)^2 without overflow for large x
    e = math.exp(-2.0 * x)
    return 4.0 * e / math.expm1(-2.0 * x) ** 2


def annulus_eig(m: int, nu: float, R: float, branch: str) -> float:
    """Closed-form eigenvalues of the annulus block.

    The radical form is evaluated after dividing numerator and
    denominator by R^{-s}, which turns it into hyperbolic functions of a*s
    and avoids overflow for large modes.
    """
    s = _annulus_s(m, nu, R)
    a = -math.log(R)
    x = a * s
    coth = 1.0 / math.tanh(x)
    head = (1.0 + 1.0 / R) * coth
    rad = math.sqrt((1.0 - 1.0 / R) ** 2 * coth ** 2 + 4.0 / R * _inv_sinh_sq(x))
    if branch == "+":
        return 0.5 * s * (head + rad)
    if branch == "-":
        return 0.5 * s * (head - rad)
    raise DomainError(f"branch must be '+' or '-', got {branch!r}")


def annulus_partial_eig(m: int, nu: float, R: float) -> float:
    """|m - nu| coth(a |m - nu|) with R = exp(-a)."""
    s = _annulus_s(m, nu, R)
    return s / math.tanh(-math.log(R) * s)


def _check_b(b, L):
    if not abs(b) <= L:
        raise DomainError(f"|b| must be at most L={L}, got {b}")


def _kummer_ratio(n: int, b: float, tol: float) -> float:
    # dM(1/2, n+1, b)/M(1/2, n+1, b)
    den = specfun.kummer_m(0.5, n + 1.0, b, tol)
    if den.value <= 0:
        raise DenominatorVanishes(f"M(1/2, {n + 1}, {b}) = {den.value}")
    num = specfun.kummer_m_deriv(0.5, n + 1.0, b, 1, tol)
    return num.value / den.value


def const_field_lambda0_bessel(b: float, tol: float = 1e-16) -> float:
    """b I_0'(b/2) / I_0(b/2)."""
    if b == 0:
        return 0.0
    return b * specfun.bessel_i0_deriv(b / 2.0, tol).value / specfun.bessel_i0(b / 2.0, tol).value


def const_field_eig(n: int, b: float, tol: float = 1e-15, L: float = 4.0) -> float:
    """Steklov eigenvalue of the constant field b on the unit disk, signed index n.

    n >= 1 uses n - b + 2b M'/M with M = M(1/2, n+1, b); n <= -1 gives the
    same formula at (|n|, -b); n = 0 is the Bessel form, cross-checked
    against the Kummer form.
    """
    _check_b(b, L)
    n = int(n)
    if n < 0:
        n, b = -n, -b
    if n == 0:
        bessel = const_field_lambda0_bessel(b)
        kummer = -b + 2.0 * b * _kummer_ratio(0, b, tol)
        if abs(bessel - kummer) > 1e-11:
            raise ConsistencyError(f"lambda_0({b}): Bessel {bessel!r} vs Kummer {kummer!r}")
        return bessel
    return n - b + 2.0 * b * _kummer_ratio(n, b, tol)


def const_field_ratio_terms(b: float, n_max: int, tol: float = 1e-17) -> np.ndarray:
    """2b M'(1/2, n+1, b)/M(1/2, n+1, b) for n = 1..n_max, vectorized over n.

    lambda_n(b) = n - b + (this term); keeping it separate avoids the
    cancellation in (lambda_n - n) + b.
    """
    n = np.arange(1, n_max + 1, dtype=float)
    if b == 0:
        return np.zeros_like(n)
    den, _, _ = specfun.kummer_m_array(0.5, n + 1.0, b, tol)
    if np.any(den <= 0):
        raise DenominatorVanishes(f"M(1/2, n+1, {b}) is not positive for some n")
    num, _, _ = specfun.kummer_m_array(1.5, n + 2.0, b, tol)
    return b * num / ((n + 1.0) * den)


def const_field_offsets(b: float, n_max: int, tol: float = 1e-17) -> np.ndarray:
    """lambda_n(b) - n for n = 1..n_max."""
    return const_field_ratio_terms(b, n_max, tol) - b


def const_field_eig_ode_oracle(n: int, b: float, r0: float = 1e-6, L: float = 4.0) -> float:
    """v'(1)/v(1) for the regular solution of v'' + v'/r - (b r - n/r)^2 v = 0.

    Shooting from r0 with v ~ r^n, scaled so that v(r0) = 1.
    """
    if int(n) != n or n < 0:
        raise DomainError("oracle index must be a nonnegative integer")
    _check_b(b, L)

    def rhs(r, y):
        v, dv = y
        return [dv, -dv / r + (b * r - n / r) ** 2 * v]

    sol = solve_ivp(rhs, (r0, 1.0), [1.0, n / r0], method="DOP853", rtol=1e-13, atol=1e-300,
                    first_step=r0 / 10.0)
    if not sol.success:
        raise IntegrationFailure(sol.message)
    v, dv = sol.y[0, -1], sol.y[1, -1]
    return dv / v


def iso_oscillator_lambda_pm(b: float) -> tuple[float, float]:
    root = 0.5 * b * math.sqrt(4.0 + b * b)
    base = 1.0 + 0.5 * b * b
    # the smaller root via the product identity lambda+ lambda- = 1
    big = base + abs(root)
    return (big, 1.0 / big) if b >= 0 else (1.0 / big, big)


def aniso_oscillator_lambda_pm(b: float, k1: float, k2: float) -> tuple[float, float]:
    _positive("k1", k1)
    _positive("k2", k2)
    base = 0.5 * (k1 * k1 + k2 * k2 + b * b)
    rad = 0.5 * math.sqrt(((k1 - k2) ** 2 + b * b) * ((k1 + k2) ** 2 + b * b))
    hi = base + rad
    lo = base - rad
    # the subtraction loses digits when b is large; the product is exact
    if lo < 0.5 * base:
        lo = (k1 * k2) ** 2 / hi
    return hi, lo


def ab_oscillator_eig(m: int, n: int, nu: float, beta: float) -> float:
    _positive("beta", beta)
    if n < 0:
        raise DomainError("n must be nonnegative")
    return 2.0 * math.sqrt(beta) * (1.0 + abs(m - nu) + 2.0 * n)


def sphere_landau_eig(m: int, j: int) -> tuple[float, int]:
    if m < 0 or j < 0:
        raise DomainError("m and j must be nonnegative")
    return j * (j + 1) + 0.5 * m * (2 * j + 1), m + 2 * j + 1


# -- shells ------------------------------------------------------------------


def _flat(values, weights, j_of):
    return (np.ascontiguousarray(values, dtype=float).ravel(),
            np.ascontiguousarray(weights, dtype=float).ravel(),
            np.ascontiguousarray(j_of, dtype=np.int64).ravel())


def _disk_pair(nu, j):
    # modes k = j+1 and k = -j, both with |k - nu| >= j
    return np.stack([j + 1.0 - nu, j + nu], axis=1)


def _annulus_modes(model, j):
    s = _disk_pair(model.nu, j)
    a = model.a
    x = a * s
    with np.errstate(divide="ignore", invalid="ignore"):
        coth = 1.0 / np.tanh(x)
        if model.kind == "annulus-partial":
            return np.where(s == 0, 1.0 / a, s * coth)
        R = model.R
        e = np.exp(-2.0 * x)
        inv_sinh_sq = 4.0 * e / np.expm1(-2.0 * x) ** 2
        head = (1.0 + 1.0 / R) * coth
        rad = np.sqrt((1.0 - 1.0 / R) ** 2 * coth ** 2 + 4.0 / R * inv_sinh_sq)
        plus = 0.5 * s * (head + rad)
        minus = 0.5 * s * (head - rad)
        # s -> 0 limits of the two eigenvalues
        plus = np.where(s == 0, (1.0 + 1.0 / R) / a, plus)
        minus = np.where(s == 0, 0.0, minus)
    return np.concatenate([plus, minus], axis=1)


def _oscillator_shells(w_plus, w_minus, j_max):
    j = np.repeat(np.arange(j_max + 1), np.arange(1, j_max + 2))
    # n1 runs 0..j inside shell j
    starts = np.repeat(np.cumsum(np.arange(j_max + 1)), np.arange(1, j_max + 2))
    n1 = np.arange(j.size) - starts
    n2 = j - n1
    vals = w_plus * (2 * n1 + 1) + w_minus * (2 * n2 + 1)
    return _flat(vals, np.ones_like(vals), j)


@dataclass
class Spectrum:
    """Shell-indexed eigenvalue generator with a certified linear lower bound.

    Attributes:
        model: the model this spectrum belongs to.
        slope, offset: every eigenvalue in shell j is >= slope*j - offset.
        w0, w1: shell j holds at most w0 + w1*j eigenvalues with multiplicity.
    """

    model: ModelSpec
    slope: float
    offset: float
    w0: float
    w1: float
    certified: bool = field(default=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def levels(self, j_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(eigenvalues, multiplicities, shell index) for shells 0..j_max."""
        if j_max < 0:
            raise DomainError("j_max must be nonnegative")
        return _levels(self, int(j_max))

    def shell_size(self, j):
        return self.w0 + self.w1 * j

    def tail_bound(self, t: float, j_max: int) -> float:
        """Upper bound on the multiplicity-weighted sum of exp(-t lambda) over shells > j_max."""
        if not self.certified:
            raise TailBoundUnavailable(f"tail bound not certified for {self.model}")
        r = math.exp(-t * self.slope)
        k = j_max + 1
        one_minus = -math.expm1(-t * self.slope)
        geo = r ** k / one_minus
        lin = r ** k * (k - (k - 1) * r) / one_minus ** 2
        return math.exp(t * self.offset) * (self.w0 * geo + self.w1 * lin)

    def shells_needed(self, t: float, tol: float, cap: int = 10_000_000) -> int:
        """Smallest j_max whose tail bound is at most ``tol``."""
        from .errors import NonConvergent

        lo = 0
        if self.tail_bound(t, lo) <= tol:
            return lo
        hi = 1
        while self.tail_bound(t, hi) > tol:
            lo = hi
            hi *= 2
            if hi > 2 * cap:
                raise NonConvergent(f"more than {cap} shells needed at t={t}, tol={tol}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.tail_bound(t, mid) <= tol:
                hi = mid
            else:
                lo = mid
        if hi > cap:
            raise NonConvergent(f"more than {cap} shells needed at t={t}, tol={tol}")
        return hi

    def eigenvalue(self, *index) -> float:
        """Eigenvalue at a model-specific index (see :func:`eigenvalue_at`)."""
        return eigenvalue_at(self.model, *index)

    def const_field_offsets(self, n_max: int) -> tuple[np.ndarray, np.ndarray]:
        """Cached (lambda_n(b) - n, lambda_n(-b) - n), n = 1..n_max."""
        if self.model.kind != "const-field-disk":
            raise DomainError("offsets are defined for the constant-field disk only")
        with self._lock:
            have = self._cache.get("offsets")
            if have is None or have[0].size < n_max:
                size = max(n_max, 2 * (have[0].size if have is not None else 0))
                b = self.model.b
                have = (const_field_offsets(b, size), const_field_offsets(-b, size))
                self._cache["offsets"] = have
        return have[0][:n_max], have[1][:n_max]


def _levels(spec: Spectrum, j_max: int):
    model = spec.model
    j = np.arange(j_max + 1, dtype=float)
    kind = model.kind
    if kind == "ab-disk":
        v = _disk_pair(model.nu, j)
        return _flat(v, np.ones_like(v), np.repeat(j, 2))
    if kind == "metric-disk":
        v = _disk_pair(model.nu, j) / model.theta1
        return _flat(v, np.ones_like(v), np.repeat(j, 2))
    if kind == "cylinder":
        s = _disk_pair(model.nu, j)
        v = np.concatenate([s / np.tanh(s), s * np.tanh(s)], axis=1)
        return _flat(v, np.ones_like(v), np.repeat(j, 4))
    if kind in ("annulus-full", "annulus-partial"):
        v = _annulus_modes(model, j)
        per = v.shape[1]
        return _flat(v, np.ones_like(v), np.repeat(j, per))
    if kind == "const-field-disk":
        plus, minus = spec.const_field_offsets(max(j_max, 1))
        n = np.arange(1, j_max + 1, dtype=float)
        lam0 = const_field_eig(0, model.b, L=model.L)
        vals = np.concatenate([[lam0], np.stack([n + plus[:j_max], n + minus[:j_max]], axis=1).ravel()])
        shells = np.concatenate([[0], np.repeat(n, 2)])
        return _flat(vals, np.ones_like(vals), shells)
    if kind == "iso-oscillator":
        hi, lo = sorted(iso_oscillator_lambda_pm(model.b), reverse=True)
        return _oscillator_shells(math.sqrt(hi), math.sqrt(lo), j_max)
    if kind == "aniso-oscillator":
        hi, lo = aniso_oscillator_lambda_pm(model.b, model.k1, model.k2)
        return _oscillator_shells(math.sqrt(hi), math.sqrt(lo), j_max)
    if kind == "ab-oscillator":
        # pairs (m, n) with |m| + n = j
        counts = 2 * np.arange(j_max + 1) + 1
        shell = np.repeat(np.arange(j_max + 1), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        m = np.arange(shell.size) - starts - shell
        n = shell - np.abs(m)
        vals = 2.0 * math.sqrt(model.beta) * (1.0 + np.abs(m - model.nu) + 2.0 * n)
        return _flat(vals, np.ones_like(vals), shell)
    if kind == "sphere-landau":
        mm = model.m
        vals = j * (j + 1) + 0.5 * mm * (2 * j + 1)
        return _flat(vals, mm + 2 * j + 1, j)
    raise DomainError(f"no spectrum for model {kind!r}")


def eigenvalue_at(model: ModelSpec, *index) -> float:
    """Eigenvalue at the model's natural index.

    ab-disk, metric-disk, annulus-partial: (k,); cylinder, annulus-full:
    (k, branch); const-field-disk: (n,) signed; oscillators: (n1, n2);
    ab-oscillator: (m, n); sphere-landau: (j,) returns the value only.
    """
    kind = model.kind
    if kind == "ab-disk":
        return ab_disk_eig(model.nu, *index)
    if kind == "metric-disk":
        return metric_disk_eig(model.nu, model.theta1, *index)
    if kind == "cylinder":
        return cylinder_eig(model.nu, *index)
    if kind == "annulus-full":
        return annulus_eig(index[0], model.nu, model.R, index[1])
    if kind == "annulus-partial":
        return annulus_partial_eig(index[0], model.nu, model.R)
    if kind == "const-field-disk":
        return const_field_eig(index[0], model.b, L=model.L)
    if kind in ("iso-oscillator", "aniso-oscillator"):
        if kind == "iso-oscillator":
            hi, lo = sorted(iso_oscillator_lambda_pm(model.b), reverse=True)
        else:
            hi, lo = aniso_oscillator_lambda_pm(model.b, model.k1, model.k2)
        n1, n2 = index
        return math.sqrt(hi) * (2 * n1 + 1) + math.sqrt(lo) * (2 * n2 + 1)
    if kind == "ab-oscillator":
        return ab_oscillator_eig(index[0], index[1], model.nu, model.beta)
    if kind == "sphere-landau":
        return sphere_landau_eig(model.m, index[0])[0]
    raise DomainError(f"unknown model {kind!r}")


def _growth(model: ModelSpec) -> tuple[float, float, float, float]:
    kind = model.kind
    if kind == "ab-disk":
        return 1.0, 0.0, 2.0, 0.0
    if kind == "metric-disk":
        return 1.0 / model.theta1, 0.0, 2.0, 0.0
    if kind == "cylinder":
        # x tanh x >= x - 0.28 for x >= 0
        return 1.0, 0.3, 4.0, 0.0
    if kind == "annulus-full":
        # lambda- >= s tanh(a s)/(1+R) >= (s - 0.28/a)/(1+R)
        return 1.0 / (1.0 + model.R), 0.3 / (model.a * (1.0 + model.R)), 4.0, 0.0
    if kind == "annulus-partial":
        return 1.0, 0.0, 2.0, 0.0
    if kind == "const-field-disk":
        return 1.0, 3.0 * abs(model.b), 2.0, 0.0
    if kind == "iso-oscillator":
        return 2.0 * math.sqrt(min(iso_oscillator_lambda_pm(model.b))), 0.0, 1.0, 1.0
    if kind == "aniso-oscillator":
        lo = aniso_oscillator_lambda_pm(model.b, model.k1, model.k2)[1]
        return 2.0 * math.sqrt(lo), 0.0, 1.0, 1.0
    if kind == "ab-oscillator":
        return 2.0 * math.sqrt(model.beta), 0.0, 1.0, 2.0
    if kind == "sphere-landau":
        return 1.0 + model.m, 0.0, model.m + 1.0, 2.0
    raise DomainError(f"unknown model {kind!r}")


def _verify_growth(spec: Spectrum, shells: int) -> bool:
    vals, weights, j = spec.levels(shells)
    if np.any(vals < spec.slope * j - spec.offset - 1e-12):
        return False
    counts = np.bincount(j, weights=weights, minlength=shells + 1)
    return bool(np.all(counts <= spec.shell_size(np.arange(shells + 1)) + 1e-9))


@lru_cache(maxsize=256)
def spectrum(model: ModelSpec) -> Spectrum:
    """Build (and cache) the Spectrum of a model, verifying its growth bound."""
    slope, offset, w0, w1 = _growth(model)
    spec = Spectrum(model, slope, offset, w0, w1)
    spec.certified = _verify_growth(spec, VERIFY_SHELLS)
    return spec
