import math

import pytest
from hypothesis import given, strategies as st

from heatlab import heattrace as ht, spectra
from heatlab.errors import DomainError, RangeError

# mpmath nsum at 30 digits
AB_DISK_ORACLE = [((0.3, 0.1), 19.995667563680564814), ((0.3, 1.0), 1.9575435527144960251)]


@pytest.mark.parametrize("args, expected", AB_DISK_ORACLE)
def test_ab_disk_direct_and_closed(args, expected):
    nu, t = args
    assert ht.ab_disk_closed(nu, t) == pytest.approx(expected, rel=1e-14)
    res = ht.trace(spectra.AbDisk(nu), t)
    assert abs(res.value - expected) <= res.tail_bound + 1e-13


def test_cylinder_against_mpmath():
    res = ht.cylinder_trace(0.25, 0.5)
    assert res.value == pytest.approx(7.7484084042180138918, rel=1e-13)


def test_sphere_routes_agree_with_mpmath():
    expected = 2.2593036028890139106
    assert ht.sphere_trace(2, 0.5, "direct").value == pytest.approx(expected, rel=1e-14)
    assert ht.sphere_trace(2, 0.5, "theta").value == pytest.approx(expected, rel=1e-14)


def test_const_field_relative_trace_against_mpmath():
    res = ht.const_field_relative_trace(0.5, 0.1)
    assert res.value == pytest.approx(-0.0029464061649947573099, rel=1e-11)


def test_oscillator_closed_forms_match_direct():
    for model in [spectra.IsoOscillator(0.7), spectra.AnisoOscillator(0.5, 1.0, 2.0)]:
        for t in (0.2, 1.5):
            direct = ht.trace(model, t)
            assert direct.value == pytest.approx(ht.closed_form_trace(model, t), rel=1e-12)


def test_metric_disk_closed_matches_direct():
    model = spectra.MetricDisk(0.35, 1.8)
    assert ht.trace(model, 0.4).value == pytest.approx(ht.metric_disk_closed(0.35, 1.8, 0.4), rel=1e-13)


def test_time_range_enforced():
    with pytest.raises(RangeError):
        ht.trace(spectra.AbDisk(0.2), 1e-5)
    with pytest.raises(RangeError):
        ht.trace(spectra.AbDisk(0.2), 60.0)


def test_cylinder_has_no_relative_reference():
    with pytest.raises(DomainError):
        ht.trace(spectra.Cylinder(0.3), 0.5, relative=True)


def test_toy_trace_zero_parameters():
    t = 0.3
    assert ht.toy_trace(0.0, 0.0, t).value == pytest.approx(1.0 / math.expm1(t), rel=1e-14)


# -- properties ----------------------------------------------------------------

models = st.sampled_from([
    spectra.AbDisk(0.3), spectra.Cylinder(0.25), spectra.AnnulusFull(0.2, 0.4), spectra.AnnulusPartial(0.6, 0.3),
    spectra.IsoOscillator(1.0), spectra.AbOscillator(0.3, 2.0), spectra.SphereLandau(2),
])


@given(models, st.floats(0.05, 5.0))
def test_loose_tolerance_within_reported_bound(model, t):
    loose = ht.trace(model, t, tol=1e-6)
    tight = ht.trace(model, t, tol=1e-14)
    assert abs(loose.value - tight.value) <= loose.tail_bound + tight.tail_bound + 1e-12 * tight.value


@given(st.floats(0.01, 0.99), st.floats(0.01, 10.0))
def test_ab_disk_flux_symmetry(nu, t):
    a = ht.ab_disk_closed(nu, t)
    assert a == pytest.approx(ht.ab_disk_closed(1.0 - nu, t), rel=1e-13)


@given(st.floats(-4, 4), st.floats(0.02, 2.0))
def test_const_field_relative_trace_even_in_field(b, t):
    plus = ht.const_field_relative_trace(b, t).value
    minus = ht.const_field_relative_trace(-b, t).value
    assert abs(plus - minus) <= 1e-12


@given(st.floats(0.05, 3.0))
def test_ab_oscillator_factorized_matches_direct(t):
    res = ht.ab_oscillator_trace(0.3, 2.0, t)
    direct = ht.direct_trace(spectra.spectrum(spectra.AbOscillator(0.3, 2.0)), t)
    assert res.value == pytest.approx(direct.value, rel=1e-12)


def test_cylinder_truncation_scales_like_inverse_time():
    counts = [ht.cylinder_trace(0.3, t).terms_used for t in (0.1, 0.05, 0.025)]
    for a, b in zip(counts, counts[1:]):
        assert 1.8 < b / a < 2.2
    # and like log(1/tol) at fixed t
    loose, tight = ht.cylinder_trace(0.3, 0.1, 1e-8).terms_used, ht.cylinder_trace(0.3, 0.1, 1e-14).terms_used
    assert tight / loose == pytest.approx(14 / 8, rel=0.15)


@pytest.mark.parametrize("model", [spectra.AbDisk(0.6), spectra.MetricDisk(0.2, 0.7), spectra.IsoOscillator(1.4),
                                   spectra.AnisoOscillator(0.8, 1.0, 1.5), spectra.SphereLandau(3)])
@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 2.0])
def test_direct_within_tail_bound_of_closed_form(model, t):
    direct = ht.trace(model, t)
    assert abs(direct.value - ht.closed_form_trace(model, t)) <= direct.tail_bound + 1e-12
