"""The acceptance suite: one function per criterion, each returning reports.

A criterion passes when every non-diagnostic report passes. Diagnostic
reports carry ``metadata['diagnostic'] = True`` and are informational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import asymptotics as asy, heattrace as ht, specfun, spectra, verify as vf
from .verify import VerificationReport as Report

SQRT2 = math.sqrt(2.0)
FINE = 2.0 ** 0.25


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    reports: tuple

    @property
    def blocking(self):
        return [r for r in self.reports if not r.metadata.get("diagnostic")]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.blocking)

    def worst(self) -> Report:
        pool = [r for r in self.blocking if not r.passed] or self.blocking
        return max(pool, key=lambda r: r.abs_error / r.tolerance if r.tolerance else math.inf)

    def line(self) -> str:
        w = self.worst()
        status = "PASS" if self.passed else "FAIL"
        n_fail = sum(not r.passed for r in self.blocking)
        return (f"criterion {self.number:02d} {status}  {self.title}  "
                f"[{len(self.blocking) - n_fail}/{len(self.blocking)} checks; worst: {w.check_name} "
                f"err={w.abs_error:.3e} tol={w.tolerance:.1e}]")


def _diag(report: Report) -> Report:
    return Report(report.check_name, report.quantity, report.oracle, report.abs_error,
                  report.tolerance, report.passed, {**report.metadata, "diagnostic": True})


def _poly_basis(low, high, extra=()):
    return [(p, False) for p in range(low, high + 1)] + list(extra)


def criterion_01():
    reports = []
    for nu in np.round(np.arange(0.0, 1.0, 0.1), 10):
        spec = spectra.spectrum(spectra.AbDisk(nu))
        for t in (0.1, 0.5, 1.0, 2.0):
            d = ht.direct_trace(spec, t)
            reports.append(Report.compare("ab-disk direct vs closed", d.value, ht.ab_disk_closed(nu, t),
                                          1e-11, nu=float(nu), t=t))
    return CriterionResult(1, "AB disk direct sum vs closed form", tuple(reports))


def criterion_02():
    reports = []
    ts = vf.geometric_grid(0.01, 0.16)
    for nu in (0.2, 0.5, 0.8):
        fit = vf.fit_function(lambda t: ht.ab_disk_closed(nu, t) - 2.0 / t, ts, [(1, 0), (3, 0), (5, 0)])
        reports.append(Report.compare("ab-disk t coefficient", fit.coefficient(1), 1 / 6 - nu + nu * nu,
                                      1e-8, nu=nu, condition=fit.condition_estimate))
    return CriterionResult(2, "AB disk expansion t coefficient", tuple(reports))


def criterion_03():
    nu = 0.3
    ts = vf.geometric_grid(0.0025, 0.04, FINE)
    fit = vf.fit_function(lambda t: ht.cylinder_trace(nu, t).value, ts, _poly_basis(-1, 6))
    a1 = asy.cylinder_a1(nu)
    return CriterionResult(3, "cylinder expansion", (
        Report.compare("cylinder 1/t coefficient", fit.coefficient(-1), 4.0, 1e-6),
        Report.compare("cylinder t coefficient", fit.coefficient(1), 2 * (1 / 6 - nu + nu * nu - a1), 1e-5,
                       a1=a1, condition=fit.condition_estimate),
    ))


def criterion_04():
    reports = []
    for nu in np.round(np.arange(0.1, 1.0, 0.1), 10):
        for R in (0.2, 0.5, 0.8):
            for m in range(-60, 61):
                eig = np.sort(np.linalg.eigvals(spectra.annulus_dtn_matrix(m, nu, R)).real)
                for branch, e in zip("-+", eig):
                    reports.append(Report.compare(f"annulus radical form vs matrix {branch}",
                                                  spectra.annulus_eig(m, nu, R, branch), e, 1e-12,
                                                  m=m, nu=float(nu), R=R))
    ts = vf.geometric_grid(0.0025, 0.04, FINE)
    for model, lead in ((spectra.AnnulusFull(0.3, 0.5), 3.0), (spectra.AnnulusPartial(0.3, 0.5), 2.0)):
        fit = vf.fit_function(lambda t: ht.annulus_trace(model, t).value, ts, _poly_basis(-1, 6))
        reports.append(Report.compare(f"{model.kind} 1/t coefficient", fit.coefficient(-1), lead, 1e-6,
                                      R=model.R, nu=model.nu))
    reports.append(vf.annulus_limit_check(0.3, 1.0, [1e-1, 1e-2, 1e-3]))
    return CriterionResult(4, "annulus eigenvalues, leading terms, R->0 limit", tuple(reports))


def criterion_05():
    reports = []
    for n in range(0, 51):
        reports.append(Report.compare("lambda_n(0) = n", spectra.const_field_eig(n, 0.0), n, 1e-13, n=n))
    for b in (0.25, 0.5, 1.0, 2.0):
        kummer = -b + 2.0 * b * spectra._kummer_ratio(0, b, 1e-16)
        reports.append(Report.compare("lambda_0 Kummer vs Bessel", kummer,
                                      spectra.const_field_lambda0_bessel(b), 1e-11, b=b))
    for b in (0.5, 1.0):
        for n in range(0, 11):
            reports.append(Report.compare("ODE shooting vs Kummer", spectra.const_field_eig_ode_oracle(n, b),
                                          spectra.const_field_eig(n, b), 1e-8, n=n, b=b))
    return CriterionResult(5, "constant-field eigenvalues", tuple(reports))


def _scaled_deltas(b, n_lo, n_hi):
    n = np.arange(1, n_hi + 1, dtype=float)
    delta = spectra.const_field_ratio_terms(b, n_hi) - asy.const_field_gamma(n, b)
    return float(np.max(n[n_lo - 1:] ** 4 * np.abs(delta[n_lo - 1:])) / abs(b))


def criterion_06():
    b = 1.0
    s1 = _scaled_deltas(b, 20, 200)
    s2 = _scaled_deltas(b, 40, 400)
    finite = Report("n^4 |lambda - mu| / |b| finite on [20, 200]", s1, 0.0,
                    0.0 if math.isfinite(s1) else math.inf, 0.0, None, {})
    stable = Report.compare("sup stable under doubling n (relative change)", abs(s2 - s1) / s1, 0.0, 0.1,
                            sup_20_200=s1, sup_40_400=s2)
    return CriterionResult(6, "eigenvalue asymptotics n^-4 remainder", (finite, stable))


def criterion_07():
    b = 0.5
    E, F = asy.const_field_E(b), asy.const_field_F(b)
    ts = 0.005 * SQRT2 ** np.arange(0, 12)
    ts = ts[ts <= 0.2 + 1e-12]
    basis = [(1, 0), (2, 0), (3, 1), (3, 0), (4, 1), (4, 0), (5, 1), (5, 0)]
    fit = vf.fit_function(lambda t: ht.const_field_relative_trace(b, t).value, ts, basis)
    A, B = vf.extract_relative_log_coefficient(b)
    target = -b * b / 2
    return CriterionResult(7, "constant-field relative trace coefficients at b = 0.5", (
        Report.compare("fitted t coefficient vs E(b)", fit.coefficient(1), E, 1e-4),
        Report.compare("fitted t^2 coefficient vs F(b)", fit.coefficient(2), F, 1e-3),
        Report.compare("extracted t^3 log t coefficient (relative error)", abs(A - target) / abs(target), 0.0,
                       0.05, A=A, B=B),
        _diag(Report.compare("t^4 log t coefficient of the full fit vs -b^2", fit.coefficient(4, True),
                             -b * b, 0.05 * b * b)),
    ))


def criterion_08():
    b = 0.01
    e_ratio = asy.const_field_E(b) / b ** 2
    f_ratio = asy.const_field_F(b) / b ** 2
    z3 = specfun.zeta_odd(3)
    lin, quad = asy.const_field_sum_coefficients()
    lin_closed = 1 - math.pi ** 2 / 6 + z3
    quad_closed = (5 - math.pi ** 2 + 14 * z3) / 4
    return CriterionResult(8, "small-b limits", (
        Report.compare("E(b)/b^2 in [-0.110, -0.100]", e_ratio, -0.105, 0.005),
        Report.compare("F(b)/b^2 in [-0.220, -0.200]", f_ratio, -0.210, 0.010),
        Report.compare("linear b coefficient of sum(lambda - mu) vs closed-form value", lin, lin_closed, 1e-6),
        Report.compare("quadratic b coefficient of sum(lambda - mu)", quad, quad_closed, 1e-6),
        _diag(Report.compare("linear b coefficient vs sign implied by the n-wise expansion", lin,
                             -lin_closed, 1e-6)),
    ))


def criterion_09():
    reports = []
    for m in range(4):
        for t in (0.25, 0.5, 1.0):
            reports.append(Report.compare("sphere direct vs theta", ht.sphere_trace(m, t, "direct").value,
                                          ht.sphere_trace(m, t, "theta").value, 1e-11, m=m, t=t))
    ts = vf.geometric_grid(0.005, 0.08, FINE)
    for m in range(4):
        exact = dict(asy.sphere_expansion_exact(m, 3))
        shifted = [ht.sphere_trace(m, t).value - 1.0 / t for t in ts]
        fit = vf.fit_expansion(list(zip(ts, shifted)), _poly_basis(0, 6))
        reports += [
            Report.compare("sphere constant term", fit.coefficient(0), 1 / 3, 1e-8, m=m),
            Report.compare("sphere t coefficient", fit.coefficient(1), float(exact[1]), 1e-6, m=m),
            Report.compare("sphere t^2 coefficient", fit.coefficient(2), float(exact[2]), 1e-4, m=m),
        ]
        logfit = vf.fit_expansion(list(zip(ts, shifted)), _poly_basis(0, 6, [(1, True)]))
        reports.append(Report.compare("sphere t log t coefficient", logfit.coefficient(1, True), 0.0, 1e-7, m=m))
        rel = [ht.sphere_trace(m, t).value - ht.sphere_trace(0, t).value for t in ts]
        relfit = vf.fit_expansion(list(zip(ts, rel)), _poly_basis(0, 6))
        reports.append(Report.compare("sphere relative t coefficient", relfit.coefficient(1), -m * m / 24, 1e-6,
                                      m=m))
    return CriterionResult(9, "sphere Landau levels", tuple(reports))


def theta_expansion_error(d, ell, N, t):
    tau = 1j * t / (2.0 * math.pi)
    exact = specfun.partial_theta(specfun.ThetaParams(d, ell, 0.0, tau)).value
    approx = specfun.partial_theta_expansion(d, ell, N, tau, j_max=0).value_at_zero()
    return abs(exact - approx)


def criterion_10():
    reports = []
    d = Fraction(1, 3)
    ts = (0.1, 0.05, 0.025)
    for N in (1, 2, 3):
        errs = [theta_expansion_error(d, 1, N, t) for t in ts]
        for t, e1, e2 in zip(ts, errs, errs[1:]):
            ratio = e1 / e2
            # passes when ratio >= 2^{N+0.5}
            shortfall = max(0.0, 2 ** (N + 0.5) - ratio)
            reports.append(Report("theta expansion error ratio on halving tau", ratio, 2 ** (N + 0.5),
                                  shortfall, 0.0, None, {"N": N, "t": t, "errors": (e1, e2)}))
    return CriterionResult(10, "partial theta expansion order", tuple(reports))


def criterion_11():
    reports = []
    ts = vf.geometric_grid(0.02, 0.32)
    for b in (0.0, 1.0):
        exp = asy.oscillator_expansion(spectra.IsoOscillator(b))
        fit = vf.fit_function(lambda t: ht.iso_oscillator_closed(b, t), ts, [(-2, 0), (0, 0), (2, 0), (4, 0),
                                                                              (6, 0), (8, 0)])
        for p in (-2, 0, 2):
            reports.append(Report.compare(f"iso oscillator t^{p} coefficient", fit.coefficient(p),
                                          exp.coefficient(p), 1e-8, b=b))
    even = [(0, 0), (2, 0), (4, 0), (6, 0), (8, 0)]
    b = 1.0
    fit = vf.fit_function(lambda t: ht.iso_oscillator_closed(b, t) - ht.iso_oscillator_closed(0.0, t), ts, even)
    reports.append(Report.compare("iso relative constant", fit.coefficient(0), -b * b / 24, 1e-8, b=b))
    for k1, k2 in ((1.0, 2.0), (0.7, 1.3)):
        fit = vf.fit_function(lambda t: ht.aniso_oscillator_closed(b, k1, k2, t)
                              - ht.aniso_oscillator_closed(0.0, k1, k2, t), ts, even)
        reports.append(Report.compare("aniso relative constant", fit.coefficient(0), -b * b / (24 * k1 * k2),
                                      1e-8, k1=k1, k2=k2))
    rng = np.random.default_rng(7)
    for b, k1, k2 in rng.uniform([-3, 0.2, 0.2], [3, 3, 3], size=(20, 3)):
        hi, lo = spectra.aniso_oscillator_lambda_pm(b, k1, k2)
        target = (k1 * k2) ** 2
        reports.append(Report.compare("lambda+ lambda- = k1^2 k2^2 (relative)", hi * lo / target, 1.0, 1e-13,
                                      b=b, k1=k1, k2=k2))
    return CriterionResult(11, "magnetic oscillators", tuple(reports))


def toy_residual(alpha, beta, t):
    return ht.toy_trace(alpha, beta, t).value - asy.toy_expansion(alpha, beta)(t)


def criterion_12():
    a, b = 0.3, 0.1
    r1, r2 = toy_residual(a, b, 0.02), toy_residual(a, b, 0.01)
    order = math.log2(abs(r1 / r2))
    shortfall = max(0.0, 2.9 - order)
    return CriterionResult(12, "toy model residual order", (
        Report("observed order on halving t (0.02 -> 0.01)", order, 2.9, shortfall, 0.0, None,
               {"residuals": (r1, r2)}),
        _diag(Report.compare("|residual| / t^3 at t = 0.02 below 10", abs(r1) / 0.02 ** 3, 0.0, 10.0)),
    ))


def criterion_13():
    reports = []
    tg = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0)
    reports += vf.diamagnetic_sweep("ab-disk", (0.1, 0.3, 0.5, 0.9), tg)
    reports += vf.diamagnetic_sweep("iso-oscillator", (0.5, 1.0, 2.0), tg)
    reports += vf.diamagnetic_sweep("aniso-oscillator", (0.5, 1.0, 2.0), tg)
    reports += vf.diamagnetic_sweep("const-field-disk", (0.25, 0.5, 1.0, 2.0), (0.05, 0.1, 0.2, 0.5, 1.0))
    reports += vf.diamagnetic_sweep("sphere-landau", (1, 2, 3), tg)
    reports += vf.symmetry_sweep(spectra.AbDisk(0.3), "flux", tg)
    reports += vf.symmetry_sweep(spectra.MetricDisk(0.3, 1.7), "flux", tg)
    reports += vf.symmetry_sweep(spectra.ConstFieldDisk(0.7), "field", (0.05, 0.2, 1.0))
    reports += vf.symmetry_sweep(spectra.IsoOscillator(1.3), "field", tg)
    reports += vf.symmetry_sweep(spectra.AbDisk(0.3), "period", tg)
    reports += vf.symmetry_sweep(spectra.AbOscillator(0.3, 0.6), "period", (0.2, 1.0))
    reports += vf.kummer_bound_audit(vf.DEFAULT_KUMMER_GRID)
    return CriterionResult(13, "diamagnetic, symmetry and Kummer-bound sweeps", tuple(reports))


def criterion_14():
    reports = []
    for nu, beta, t in ((0.3, 1.0, 0.5), (0.0, 0.25, 1.0), (0.7, 2.0, 0.2)):
        fact = ht.ab_oscillator_trace(nu, beta, t)
        brute = vf._brute_ab_oscillator(nu, beta, t, 2000, 2000)
        reports.append(Report.compare("AB oscillator factorized vs brute force", fact.value, brute, 1e-12,
                                      nu=nu, beta=beta, t=t))
        ratio = fact.diagnostics["literal_ratio"]
        reports.append(_diag(Report.compare("literal-form ratio equals exp(-1 + 2 sqrt(beta) t)", ratio,
                                            math.exp(-1.0 + 2.0 * math.sqrt(beta) * t), 1e-12,
                                            nu=nu, beta=beta, t=t)))
    return CriterionResult(14, "AB oscillator", tuple(reports))


CRITERIA = (criterion_01, criterion_02, criterion_03, criterion_04, criterion_05, criterion_06,
            criterion_07, criterion_08, criterion_09, criterion_10, criterion_11, criterion_12,
            criterion_13, criterion_14)


def run_acceptance(selected=None) -> list[CriterionResult]:
    chosen = CRITERIA if selected is None else [CRITERIA[i - 1] for i in selected]
    return [fn() for fn in chosen]
