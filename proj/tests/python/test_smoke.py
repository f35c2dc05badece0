"""Smoke tests for the python bindings: thin checks that the module imports,
round-trips values through the C++ core, and raises the mapped exceptions."""

import math

import pytest

import mcg


def fast_settings():
    s = mcg.IntegrationSettings()
    s.t_end = 300.0
    s.t_skip = 100.0
    return s


def test_module_surface():
    assert mcg.__version__
    p = mcg.reference_params(0.5)
    assert p.alpha == 0.5
    assert p.eta == 12.2
    assert p.a == -6.0
    assert "alpha=0.5" in repr(p)
    q = p.with_alpha(1.2)
    assert q.alpha == 1.2 and q.eta == p.eta


def test_vector_field_hand_value():
    p = mcg.reference_params(0.5)
    v = mcg.vector_field(mcg.State(0.0, 1.0, 0.0), p)
    assert v.x == pytest.approx(2.0, abs=1e-15)
    assert v.y == pytest.approx(0.0, abs=1e-15)
    assert v.z == pytest.approx(3.0, abs=1e-15)


def test_mirror_is_exact():
    s = mcg.State(0.3, -0.7, 1.1)
    m = mcg.mirror(s)
    assert (m.x, m.y, m.z) == (-0.3, 0.7, 1.1)


def test_origin_eigenvalues():
    rep = mcg.origin_eigenvalues(mcg.reference_params(0.5))
    assert rep.lambda1 == -0.6
    assert rep.alpha_star == pytest.approx(5.4222, abs=1e-4)
    assert rep.lambda2.imag != 0.0
    assert rep.classification == mcg.FixedPointKind.SaddleFocus


def test_integrate_and_maxima():
    p = mcg.reference_params(0.26)
    traj = mcg.integrate(p, settings=fast_settings())
    assert len(traj) == len(traj.states) == len(traj.t)
    assert len(traj) > 1000
    assert traj.t[0] < traj.t[-1]
    assert all(math.isfinite(v) for s in traj.states[:50] for v in (s.x, s.y, s.z))
    peaks = mcg.z_maxima(traj)
    assert len(peaks) >= 8
    assert all(pk.value > 0 for pk in peaks)


def test_lyapunov_and_kaplan_yorke():
    ls = mcg.LyapunovSettings()
    ls.transient = 200.0
    ls.averaging = 1000.0
    spec = mcg.lyapunov_spectrum(mcg.reference_params(0.5), settings=ls)
    e = spec.exponents
    assert e[0] >= e[1] >= e[2]
    assert all(math.isfinite(v) for v in e)
    assert spec.averaging_time == 1000.0
    ky = mcg.kaplan_yorke(spec)
    assert 0.0 <= ky <= 3.0
    assert mcg.kaplan_yorke(spec, 0.02) <= 3.0


def test_detect_period_synthetic():
    det = mcg.detect_period([1.0, 2.0, 3.0] * 4, 0.05)
    assert det.period == 3
    assert not det.ambiguous
    assert det.sequence_periodic


def test_classify_returns_kind():
    ls = mcg.LyapunovSettings()
    ls.transient = 200.0
    ls.averaging = 1000.0
    spec = mcg.lyapunov_spectrum(mcg.reference_params(0.26), settings=ls)
    cls = mcg.classify_attractor(spec, 0.05)
    assert isinstance(cls.kind, mcg.AttractorKind)


def test_thermistor_fit():
    fit = mcg.fit_thermistor(60.0, 3000.0, 270.0, 240.0, 300.0)
    assert fit.samples == 121
    assert 0.9 < fit.r_squared <= 1.0
    t = 270.0
    rel = abs(mcg.taylor_resistance(t, _physical()) - mcg.thermistor_resistance(t, _physical()))
    assert rel / mcg.thermistor_resistance(t, _physical()) < 1e-12


def _physical():
    return mcg.PhysicalParams(1.0, 1.0, 60.0, 3000.0, 270.0, 1.0, 1.0, 0.0, 0.0)


def test_divergence_maps_to_exception():
    bad = mcg.ModelParams(1e-300, 12.2, -6.0, 3.0, 3.0, -2.0, 3.0, 0.6)
    with pytest.raises(mcg.DivergenceError):
        mcg.integrate(bad, settings=fast_settings())


def test_invalid_params_raise():
    with pytest.raises(ValueError):
        mcg.ModelParams(-1.0, 12.2, -6.0, 3.0, 3.0, -2.0, 3.0, 0.6)


def test_tiny_sweep():
    spec = mcg.SweepSpec()
    spec.alpha_min = 0.2
    spec.alpha_max = 0.22
    spec.alpha_step = 0.01
    spec.integration = fast_settings()
    spec.analyses = mcg.ANALYSIS_MAXIMA
    spec.workers = 2
    rows = mcg.run_sweep(spec)
    assert [round(r.alpha, 6) for r in rows] == [0.2, 0.21, 0.22]
    assert all(not r.diverged and len(r.z_maxima) > 0 for r in rows)
    assert all(r.spectrum is None for r in rows)
