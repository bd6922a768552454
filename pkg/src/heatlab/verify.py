"""Numerical cross-checks: closed form vs direct sums, coefficient fits, sweeps."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import asymptotics, heattrace as ht, specfun, spectra
from ._parallel import parallel_map
from .errors import DomainError, IllConditioned

IDENTITY_TOL = 1e-11
FLAG_CONDITION = 1e8
WARN_CONDITION = 1e12


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    quantity: float
    oracle: float
    abs_error: float
    tolerance: float
    passed: bool = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ok = bool(self.abs_error <= self.tolerance)
        if self.passed is None:
            object.__setattr__(self, "passed", ok)
        elif self.passed != ok:
            raise ValueError("passed must equal abs_error <= tolerance")

    @classmethod
    def compare(cls, name, quantity, oracle, tolerance, **metadata):
        err = abs(float(quantity) - float(oracle))
        if math.isnan(err):
            err = math.inf
        return cls(name, float(quantity), float(oracle), err, float(tolerance), None, metadata)


@dataclass(frozen=True)
class FitResult:
    basis: list
    coefficients: list
    residual_max: float
    condition_estimate: float
    ill_conditioned: bool = False

    def coefficient(self, power, has_log: bool = False) -> float:
        key = (Fraction(power), has_log)
        for b, c in zip(self.basis, self.coefficients):
            if (Fraction(b[0]), bool(b[1])) == key:
                return c
        raise KeyError(key)


def geometric_grid(t_min: float, t_max: float, ratio: float = math.sqrt(2.0)) -> np.ndarray:
    n = int(math.floor(math.log(t_max / t_min) / math.log(ratio) + 1e-9)) + 1
    return t_min * ratio ** np.arange(n)


def _design(ts, basis):
    ts = np.asarray(ts, dtype=float)
    cols = []
    for power, has_log in basis:
        col = ts ** float(power)
        cols.append(col * np.log(ts) if has_log else col)
    return np.stack(cols, axis=1)


def fit_expansion(samples: Sequence[tuple[float, float]], basis: Sequence[tuple]) -> FitResult:
    """Least-squares fit of sum_i c_i t^{p_i} (log t)^{e_i} to (t, value) samples.

    Columns are scaled to unit norm before solving; the condition number of
    the scaled matrix is reported. Above 1e8 the result is flagged, above
    1e12 an :class:`IllConditioned` warning is also emitted.
    """
    basis = [(Fraction(p), bool(lg)) for p, lg in basis]
    ts = np.array([s[0] for s in samples], dtype=float)
    ys = np.array([s[1] for s in samples], dtype=float)
    if len(ts) < len(basis) + 2:
        raise DomainError(f"need at least {len(basis) + 2} samples for {len(basis)} basis functions")
    if np.any(ts <= 0) or len(set(ts.tolist())) != len(ts):
        raise DomainError("t values must be distinct and positive")
    if ts.max() / ts.min() < 4.0 - 1e-12:
        raise DomainError("t values must span at least a factor of 4")
    A = _design(ts, basis)
    scale = np.linalg.norm(A, axis=0)
    As = A / scale
    sol, *_ = np.linalg.lstsq(As, ys, rcond=None)
    coef = sol / scale
    resid = float(np.max(np.abs(A @ coef - ys)))
    cond = float(np.linalg.cond(As))
    if cond > WARN_CONDITION:
        warnings.warn(f"fit condition estimate {cond:.3g}", IllConditioned, stacklevel=2)
    return FitResult(list(basis), [float(c) for c in coef], resid, cond, cond > FLAG_CONDITION)


def fit_function(fn, ts, basis) -> FitResult:
    """Sample ``fn`` on ``ts`` (in parallel) and fit it."""
    values = parallel_map(fn, list(ts))
    return fit_expansion(list(zip(ts, values)), basis)


# -- constant-field log coefficient ----------------------------------------------

LOG_NUISANCE = ((3, True), (3, False), (4, True), (4, False))


def extract_relative_log_coefficient(b: float, t_grid: Sequence[float] | None = None,
                                     basis: Sequence[tuple] = LOG_NUISANCE) -> tuple[float, float]:
    """Recover the t^3 log t coefficient of the constant-field relative trace.

    Subtracts E(b) t + F(b) t^2 and fits the rest. The default basis carries
    t^4 log t and t^4 nuisance columns besides t^3 log t and t^3; without them
    the next order leaks into the t^3 log t estimate. Returns (A, B), the
    t^3 log t and t^3 coefficients.
    """
    if t_grid is None:
        t_grid = geometric_grid(0.01, 0.2)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 6 or t_grid.min() < 0.01 - 1e-15 or t_grid.max() > 0.2 + 1e-15:
        raise DomainError("t_grid must hold at least 6 points inside [0.01, 0.2]")
    if b == 0:
        return 0.0, 0.0
    E, F = asymptotics.const_field_E(b), asymptotics.const_field_F(b)
    values = parallel_map(lambda t: ht.const_field_relative_trace(b, t).value, list(t_grid))
    rest = [v - E * t - F * t * t for t, v in zip(t_grid, values)]
    fit = fit_expansion(list(zip(t_grid, rest)), basis)
    return fit.coefficient(3, True), fit.coefficient(3, False)


# -- cross checks ------------------------------------------------------------------


def cross_check(model, t_grid: Iterable[float]) -> list[VerificationReport]:
    """Direct summation against the closed form (or theta route) at each t."""
    spec = spectra.spectrum(model)
    reports = []
    if model.kind == "annulus-full":
        reports.extend(_annulus_mode_checks(model))
        return reports
    for t in t_grid:
        direct = ht.direct_trace(spec, t)
        closed = ht.closed_form_trace(model, t)
        if closed is None:
            raise DomainError(f"model {model.kind!r} has no second evaluation path")
        reports.append(VerificationReport.compare(
            f"{model.kind} direct vs closed", direct.value, closed, direct.tail_bound + IDENTITY_TOL,
            t=t, terms=direct.terms_used))
    return reports


def _annulus_mode_checks(model, m_max: int = 60):
    out = []
    for m in range(-m_max, m_max + 1):
        if m - model.nu == 0:
            continue
        eig = np.sort(np.linalg.eigvals(spectra.annulus_dtn_matrix(m, model.nu, model.R)).real)
        closed = (spectra.annulus_eig(m, model.nu, model.R, "-"),
                  spectra.annulus_eig(m, model.nu, model.R, "+"))
        for branch, e, c in zip("-+", eig, closed):
            scale = max(1.0, abs(e))
            out.append(VerificationReport.compare(
                f"annulus closed vs matrix ({branch})", c, e, 1e-12 * scale, m=m, nu=model.nu, R=model.R))
    return out


# -- inequality and symmetry sweeps ------------------------------------------------

DIAMAGNETIC_FAMILIES = ("ab-disk", "iso-oscillator", "aniso-oscillator", "const-field-disk",
                        "sphere-landau")


def _family_model(family, value, k1=1.0, k2=2.0):
    if family == "ab-disk":
        return spectra.AbDisk(value)
    if family == "iso-oscillator":
        return spectra.IsoOscillator(value)
    if family == "aniso-oscillator":
        return spectra.AnisoOscillator(value, k1, k2)
    if family == "const-field-disk":
        return spectra.ConstFieldDisk(value)
    if family == "sphere-landau":
        return spectra.SphereLandau(int(value))
    raise DomainError(f"family must be one of {DIAMAGNETIC_FAMILIES}")


def diamagnetic_sweep(family: str, param_grid, t_grid, k1: float = 1.0, k2: float = 2.0
                      ) -> list[VerificationReport]:
    """Check Tr(with field) <= Tr(without field) on a grid.

    ``abs_error`` is the excess max(0, Tr_field - Tr_0); the tolerance is
    the summed tail bounds plus 1e-12.
    """
    jobs = [(p, t) for p in param_grid for t in t_grid]

    def one(job):
        p, t = job
        if family == "const-field-disk":
            rel = ht.const_field_relative_trace(p, t)
            field_val, ref_val, slack = rel.value, 0.0, rel.tail_bound
        else:
            model = _family_model(family, p, k1, k2)
            ref = ht.reference_model(model)
            a = ht.direct_trace(spectra.spectrum(model), t)
            r = ht.direct_trace(spectra.spectrum(ref), t)
            field_val, ref_val, slack = a.value, r.value, a.tail_bound + r.tail_bound
        excess = max(0.0, field_val - ref_val)
        return VerificationReport(f"diamagnetic {family}", field_val, ref_val, excess, slack + 1e-12,
                                  None, {"param": p, "t": t})

    return parallel_map(one, jobs)


def _brute_ab_disk(nu_raw, t, k_max=4000):
    k = np.arange(-k_max, k_max + 1, dtype=float)
    return math.fsum(np.exp(-t * np.abs(k - nu_raw)))


def _brute_ab_oscillator(nu_raw, beta, t, m_max=600, n_max=600):
    m = np.arange(-m_max, m_max + 1, dtype=float)
    n = np.arange(n_max + 1, dtype=float)
    e = 2.0 * math.sqrt(beta) * (1.0 + np.abs(m[:, None] - nu_raw) + 2.0 * n[None, :])
    return math.fsum(np.exp(-t * e).ravel())


def symmetry_sweep(model, transform: str, t_grid, tol: float = IDENTITY_TOL) -> list[VerificationReport]:
    """Trace invariance under nu -> 1 - nu ('flux'), b -> -b ('field') or nu -> nu + 1 ('period')."""
    reports = []
    for t in t_grid:
        if transform == "flux":
            if not hasattr(model, "nu"):
                raise DomainError("flux symmetry needs a flux parameter")
            other = spectra.model_from_dict({**spectra.model_to_dict(model), "nu": 1.0 - model.nu})
            a, b = ht.trace(model, t).value, ht.trace(other, t).value
        elif transform == "field":
            if not hasattr(model, "b"):
                raise DomainError("field parity needs a field parameter")
            other = spectra.model_from_dict({**spectra.model_to_dict(model), "b": -model.b})
            rel = model.kind == "const-field-disk"
            a, b = ht.trace(model, t, relative=rel).value, ht.trace(other, t, relative=rel).value
        elif transform == "period":
            # unreduced flux summed by brute force against the reduced closed form
            if model.kind == "ab-disk":
                a, b = _brute_ab_disk(model.nu + 1.0, t), ht.ab_disk_closed(model.nu, t)
            elif model.kind == "ab-oscillator":
                a = _brute_ab_oscillator(model.nu + 1.0, model.beta, t)
                b = ht.ab_oscillator_trace(model.nu, model.beta, t).value
            else:
                raise DomainError("period check supports ab-disk and ab-oscillator")
        else:
            raise DomainError(f"unknown transform {transform!r}")
        reports.append(VerificationReport.compare(f"{transform} symmetry {model.kind}", a, b, tol, t=t))
    return reports


def annulus_limit_check(nu: float, t: float, R_sequence: Sequence[float], full: bool = False,
                        tol: float = 1e-6) -> VerificationReport:
    """Distance between the annulus trace and the AB disk trace as R -> 0.

    Passes when the final gap is within ``tol``; monotone decrease of the
    gaps is recorded in the metadata.
    """
    R_sequence = list(R_sequence)
    if any(r2 >= r1 for r1, r2 in zip(R_sequence, R_sequence[1:])):
        raise DomainError("R_sequence must be decreasing")
    limit = ht.ab_disk_closed(nu, t)
    cls = spectra.AnnulusFull if full else spectra.AnnulusPartial
    gaps = [abs(ht.annulus_trace(cls(nu, R), t).value - limit) for R in R_sequence]
    monotone = all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    name = f"annulus {'full' if full else 'partial'} R->0 limit"
    final = ht.annulus_trace(cls(nu, R_sequence[-1]), t).value
    return VerificationReport.compare(name, final, limit, tol, gaps=gaps, R=R_sequence,
                                      monotone=monotone)


def kummer_bound_audit(param_grid: Iterable[tuple[float, float, float, int]]) -> list[VerificationReport]:
    """Truncation error of the order-N partial sum against the remainder bound.

    The reference is the 60-term partial sum (or the adaptive evaluation
    when that needs more terms). A rounding slack of 4 ulp of the
    reference is added to the bound.
    """
    out = []
    for a, c, z, N in param_grid:
        ref60 = specfun.kummer_partial_sum(a, c, z, 60)
        adaptive = specfun.kummer_m(a, c, z, 1e-17)
        ref = ref60 if adaptive.terms_used <= 60 else adaptive.value
        trunc = specfun.kummer_partial_sum(a, c, z, N)
        bound = specfun.kummer_truncation_bound(a, c, z, N)
        err = abs(ref - trunc)
        slack = 4.0 * np.spacing(abs(ref))
        out.append(VerificationReport(f"kummer bound a={a} c={c} z={z} N={N}", trunc, ref, err,
                                      bound + slack, None,
                                      {"bound": bound, "tightness": err / bound if bound else 0.0}))
    return out


DEFAULT_KUMMER_GRID = tuple((a, c, z, N) for a in (0.5, 1.5) for c in (1.0, 2.0, 5.0)
                            for z in (-4.0, -1.0, 0.5, 1.0, 4.0) for N in (1, 3, 8, 20) if a < c)
