import numpy as np
import pytest
from hypothesis import given, strategies as st

from heatlab import spectra
from heatlab.errors import DegenerateIndex, DomainError

# n - b + 2b M'(1/2,n+1,b)/M(1/2,n+1,b) through mpmath.hyp1f1 at 30 digits
CONST_FIELD_ORACLE = [
    ((0, 0.5), 0.062016750958962357308),
    ((0, -1.5), 0.52633036982034271721),
    ((1, 0.5), 0.78319234169228049287),
    ((3, -2.0), 4.6379215923283343354),
    ((10, 4.0), 6.5216279549923759356),
    ((-2, 1.0), 2.7274988377424058361),
    ((50, -3.0), 52.944359934847097203),
]


@pytest.mark.parametrize("index, expected", CONST_FIELD_ORACLE)
def test_const_field_eigenvalues(index, expected):
    n, b = index
    assert spectra.const_field_eig(n, b) == pytest.approx(expected, rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("n, b", [(0, 0.7), (1, -1.2), (4, 2.5)])
def test_const_field_matches_ode_shooting(n, b):
    assert spectra.const_field_eig_ode_oracle(n, b) == pytest.approx(spectra.const_field_eig(n, b), abs=1e-8)


def test_ab_disk_spectrum_values():
    vals = [spectra.eigenvalue_at(spectra.AbDisk(0.3), k) for k in range(-5, 6)]
    assert vals == pytest.approx([abs(k - 0.3) for k in range(-5, 6)])


def test_flux_reduced_mod_one():
    assert spectra.AbDisk(1.3).nu == pytest.approx(0.3)
    assert spectra.AbDisk(-0.25).nu == pytest.approx(0.75)


def test_model_dict_round_trip():
    for model in [spectra.AnnulusFull(0.2, 0.3), spectra.ConstFieldDisk(1.5), spectra.SphereLandau(3),
                  spectra.AnisoOscillator(1.0, 1.0, 2.0)]:
        assert spectra.model_from_dict(spectra.model_to_dict(model)) == model


def test_model_rejects_unknown_parameter():
    with pytest.raises(DomainError):
        spectra.model_from_dict({"kind": "ab-disk", "nu": 0.2, "b": 1.0})
    with pytest.raises(DomainError):
        spectra.model_from_dict({"kind": "no-such-model"})


def test_degenerate_cylinder_index():
    with pytest.raises(DegenerateIndex):
        spectra.cylinder_eig(0.0, 0, "+")


def test_field_bound_enforced():
    with pytest.raises(DomainError):
        spectra.const_field_eig(1, 4.5)


def test_oscillator_roots_multiply_to_one():
    hi, lo = spectra.iso_oscillator_lambda_pm(2.0)
    assert hi * lo == pytest.approx(1.0, rel=1e-15)
    assert hi + lo == pytest.approx(2 + 4.0, rel=1e-15)


def test_sphere_levels():
    assert spectra.sphere_landau_eig(1, 0) == (0.5, 2)
    assert spectra.sphere_landau_eig(2, 3) == (12 + 7.0, 9)


# -- properties ----------------------------------------------------------------

fluxes = st.floats(0.01, 0.99)


@given(st.floats(-4, 4))
def test_const_field_offsets_stay_within_field(b):
    # |lambda_n(b) - n| <= |b| (1 + 2/n) for the first 500 modes
    n = np.arange(1, 501)
    offsets = spectra.const_field_offsets(b, 500)
    assert np.all(np.abs(offsets) <= abs(b) * (1 + 2.0 / n) + 1e-12)


@given(st.floats(-4, 4), st.integers(-30, 30))
def test_const_field_signed_index_symmetry(b, n):
    assert spectra.const_field_eig(n, b) == pytest.approx(spectra.const_field_eig(-n, -b), rel=1e-14, abs=1e-15)


@given(fluxes, st.integers(-40, 40))
def test_cylinder_branches_ordered(nu, k):
    lo, hi = spectra.cylinder_eig(nu, k, "-"), spectra.cylinder_eig(nu, k, "+")
    # coth and tanh round to 1 once |k - nu| is near 19
    assert 0 < lo <= abs(k - nu) <= hi


@given(fluxes, st.floats(0.05, 0.9), st.integers(-25, 25))
def test_annulus_closed_form_matches_matrix(nu, R, m):
    eig = np.sort(np.linalg.eigvals(spectra.annulus_dtn_matrix(m, nu, R)).real)
    closed = sorted(spectra.annulus_eig(m, nu, R, br) for br in "+-")
    assert np.allclose(eig, closed, rtol=1e-10, atol=1e-12)


@given(fluxes, st.floats(0.05, 0.9), st.integers(-25, 25))
def test_annulus_partial_above_disk(nu, R, m):
    partial = spectra.annulus_partial_eig(m, nu, R)
    assert partial >= abs(m - nu)


@given(st.sampled_from([
    spectra.AbDisk(0.3), spectra.MetricDisk(0.4, 1.7), spectra.Cylinder(0.25), spectra.AnnulusFull(0.2, 0.4),
    spectra.AnnulusPartial(0.6, 0.3), spectra.ConstFieldDisk(-2.0), spectra.IsoOscillator(1.0),
    spectra.AnisoOscillator(0.5, 1.0, 3.0), spectra.AbOscillator(0.3, 2.0), spectra.SphereLandau(2),
]), st.integers(0, 60))
def test_shell_lower_bound_and_size(model, j):
    spec = spectra.spectrum(model)
    vals, mults, shells = spec.levels(j)
    here = shells == j
    assert np.all(vals[here] >= spec.slope * j - spec.offset - 1e-12)
    assert mults[here].sum() <= spec.shell_size(j) + 1e-9
