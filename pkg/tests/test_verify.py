import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heatlab import spectra, verify as vf
from heatlab.errors import DomainError, IllConditioned


def test_geometric_grid_endpoints():
    grid = vf.geometric_grid(0.01, 0.16)
    assert grid[0] == 0.01
    assert grid[-1] == pytest.approx(0.16)
    assert np.all(np.diff(grid) > 0)


def test_fit_recovers_polynomial_with_log():
    ts = vf.geometric_grid(0.01, 0.2)
    samples = [(t, 2 / t - 0.5 + 3 * t * np.log(t) + 0.25 * t) for t in ts]
    fit = vf.fit_expansion(samples, [(-1, 0), (0, 0), (1, 1), (1, 0)])
    assert fit.coefficient(-1) == pytest.approx(2, rel=1e-10)
    assert fit.coefficient(1, True) == pytest.approx(3, rel=1e-9)
    assert not fit.ill_conditioned


def test_fit_input_validation():
    with pytest.raises(DomainError):
        vf.fit_expansion([(0.1, 1.0), (0.2, 1.0), (0.3, 1.0)], [(0, 0), (1, 0)])
    narrow = [(0.1 + 0.01 * i, 1.0) for i in range(8)]
    with pytest.raises(DomainError):
        vf.fit_expansion(narrow, [(0, 0)])


def test_ill_conditioned_fit_warns():
    ts = np.linspace(1.0, 4.0, 24)
    basis = [(p, 0) for p in range(18)]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fit = vf.fit_expansion([(t, t) for t in ts], basis)
    assert fit.ill_conditioned
    assert any(issubclass(w.category, IllConditioned) for w in caught)


def test_report_pass_rule():
    ok = vf.VerificationReport.compare("x", 1.0, 1.0 + 1e-9, 1e-8)
    bad = vf.VerificationReport.compare("x", 1.0, 1.1, 1e-8)
    assert ok.passed and not bad.passed


@pytest.mark.parametrize("model", [spectra.AbDisk(0.4), spectra.SphereLandau(1), spectra.IsoOscillator(0.8),
                                   spectra.AnnulusFull(0.3, 0.5)])
def test_cross_checks_pass(model):
    reports = vf.cross_check(model, [0.1, 1.0])
    assert reports and all(r.passed for r in reports)


def test_kummer_audit_default_grid():
    reports = vf.kummer_bound_audit(vf.DEFAULT_KUMMER_GRID)
    assert all(r.passed for r in reports)


def test_diamagnetic_sweep_ab_disk():
    reports = vf.diamagnetic_sweep("ab-disk", (0.2, 0.5), (0.1, 1.0))
    assert all(r.passed for r in reports)


def test_log_coefficient_extraction():
    A, _ = vf.extract_relative_log_coefficient(0.5)
    assert A == pytest.approx(-0.125, rel=0.05)


def test_annulus_limit_gaps_decrease():
    rep = vf.annulus_limit_check(0.3, 1.0, [1e-1, 1e-2, 1e-3])
    assert rep.metadata["monotone"]


@given(st.floats(0.01, 0.99), st.sampled_from([0.1, 0.5, 2.0]))
def test_flux_symmetry_sweep(nu, t):
    assert all(r.passed for r in vf.symmetry_sweep(spectra.AbDisk(nu), "flux", [t]))


@given(st.floats(0.01, 0.99))
def test_period_symmetry_sweep(nu):
    assert all(r.passed for r in vf.symmetry_sweep(spectra.AbDisk(nu), "period", [0.5]))


def test_log_coefficient_grid_stable():
    grid = vf.geometric_grid(0.01, 0.13)
    A1, _ = vf.extract_relative_log_coefficient(0.5, grid)
    A2, _ = vf.extract_relative_log_coefficient(0.5, 1.5 * grid)
    assert abs(A1 - A2) < 0.02 * abs(A1)
