import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.integrate import quad

from nlwave import analysis, config
from nlwave import grid as sg
from nlwave.diagnostics import DiagnosticsRow, DiagnosticsSeries, spectrum_tail_hat
from nlwave.errors import ConfigurationError, DomainError
from nlwave.model import ModelParams

FOCUS = ModelParams(1, 1, 1, 2)


def test_traveling_wave_examples():
    tw = analysis.traveling_wave_slopes(ModelParams(1, 1, 0, 2), 1.0)
    assert tw.slopes == (0.0,) and "triple root" in tw.note
    tw = analysis.traveling_wave_slopes(ModelParams(1, 3, 0, 2), 2.0)
    assert tw.slopes[0] == 0.0
    assert tw.slopes[1] == pytest.approx(1.7320508075688772, abs=1e-12)
    assert tw.slopes[2] == pytest.approx(-1.7320508075688772, abs=1e-12)
    assert tw.extended_schwartz
    tw = analysis.traveling_wave_slopes(ModelParams(1, 1, 0, 2), 0.0)
    assert tw.slopes == (0.0,) and not tw.extended_schwartz
    tw = analysis.traveling_wave_slopes(ModelParams(1, 0, 0, 2), 3.0)
    assert tw.slopes == (0.0,) and "degenerate" in tw.note


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-10, 10))
def test_traveling_wave_identity(a1, a2, c):
    assume(abs(a2) > 1e-3)
    tw = analysis.traveling_wave_slopes(ModelParams(a1, a2, 0, 2), c)
    for s in tw.slopes[1:]:
        assert s * s * a2 / 3 == pytest.approx(c * c - a1, rel=1e-12, abs=1e-12)


def test_snap_wavenumber():
    g = sg.make_grid(30.0, 1024)
    assert analysis.snap_wavenumber(g, 2.0) == pytest.approx(19 * math.pi / 30)
    assert analysis.snap_wavenumber(g, 0.25) == pytest.approx(2 * math.pi / 30)
    assert analysis.snap_wavenumber(g, 1e9) == pytest.approx(g.k_max)
    assert analysis.PerturbationSpec(1e-3, 2.0).snapped_kp(g) in g.k


def test_perturbation_spec_validation():
    with pytest.raises(ConfigurationError):
        analysis.PerturbationSpec(0.0, 1.0)


def test_perturbed_ic_examples():
    g = sg.make_grid(30.0, 1024)
    base = 1 / np.cosh(g.x) ** 2
    tiny = analysis.perturbed_ic(base, g, analysis.PerturbationSpec(1e-9, 2.0))
    assert np.max(np.abs(tiny - base)) <= 1e-9 * (1 + 1e-6)
    pert = analysis.perturbed_ic(base, g, analysis.PerturbationSpec(1e-3, 2.0))
    i0 = int(np.flatnonzero(g.x == 0.0)[0])
    assert pert[i0] == base[i0] + 1e-3
    np.testing.assert_allclose(pert - base, 1e-3 * np.cos(19 * math.pi / 30 * g.x), atol=1e-17)


def test_growth_rate_examples():
    g = sg.make_grid(30.0, 256)
    psi = np.exp(-g.x**2)
    assert analysis.growth_rate(psi, psi, g) == -16.0
    pert = psi + 1e-3 * np.cos(g.x)
    assert analysis.growth_rate(2 * pert, 2 * psi, g) == pytest.approx(analysis.growth_rate(pert, psi, g), abs=1e-14)
    with pytest.raises(DomainError):
        analysis.growth_rate(pert, np.zeros(g.N), g)


def test_initial_growth_rate_matches_quadrature():
    L, eps = 30.0, 1e-3
    g = sg.make_grid(L, 1024)
    spec = analysis.PerturbationSpec(eps, 0.25)
    kp = spec.snapped_kp(g)
    base = 1 / np.cosh(g.x) ** 2
    gamma0 = analysis.growth_rate(analysis.perturbed_ic(base, g, spec), base, g)
    cos2 = quad(lambda x: np.cos(kp * x) ** 2, -L, L, epsabs=0, epsrel=1e-13, limit=200)[0]
    sech4 = quad(lambda x: np.cosh(x) ** -4, -L, L, epsabs=0, epsrel=1e-13, limit=200)[0]
    assert sech4 == pytest.approx(4 / 3, rel=1e-12)
    oracle = math.log10(eps * math.sqrt(cos2) / math.sqrt(sech4))
    assert oracle == pytest.approx(-2.32, abs=0.01)
    assert gamma0 == pytest.approx(oracle, abs=1e-10)


def test_spectrum_tail_examples():
    g = sg.make_grid(np.pi, 64)
    c = np.zeros(64, complex)
    c[1] = c[-1] = 32.0
    assert spectrum_tail_hat(g, c) == 0.0
    assert analysis.spectrum_tail(g, np.cos(g.x)) <= 1e-15
    with pytest.raises(DomainError):
        analysis.spectrum_tail(g, np.zeros(64))


def test_spectrum_tail_gaussian_against_direct_dft():
    g = sg.make_grid(30.0, 1024)
    psi = np.exp(-g.x**2)
    j = np.arange(g.N)
    direct = np.abs(np.exp(-2j * np.pi * np.outer(j, j) / g.N) @ psi)
    tail_idx = np.abs(g.k) >= 0.9 * g.k_max
    oracle = direct[tail_idx].max() / direct.max()
    assert oracle <= 1e-12
    assert analysis.spectrum_tail(g, psi) <= 1e-12


def test_spectrum_tail_white_noise():
    g = sg.make_grid(30.0, 1024)
    noise = np.random.default_rng(2024).standard_normal(g.N)
    assert analysis.spectrum_tail(g, noise) >= 0.1


def series_of(values, name="energy"):
    s = DiagnosticsSeries()
    for i, v in enumerate(values):
        row = dict.fromkeys(DiagnosticsRow._fields, 0.0)
        row.update(t=float(i), **{name: v})
        s.append(DiagnosticsRow(**row))
    return s


def test_conservation_drift_examples():
    assert analysis.conservation_drift(series_of([2.0, 2.0, 2.0]), "energy") == 0
    assert analysis.conservation_drift(series_of([1.0, 1.0 + 1e-9]), "energy") == pytest.approx(1e-9, rel=1e-6)
    assert analysis.conservation_drift(series_of([4.0, 5.0], "mass"), "mass") == pytest.approx(0.25)
    with pytest.raises(ConfigurationError):
        analysis.conservation_drift(DiagnosticsSeries(), "energy")
    with pytest.raises(ConfigurationError):
        analysis.conservation_drift(series_of([1.0, 2.0]), "momentum")


def test_series_requires_increasing_time():
    s = series_of([1.0, 2.0])
    with pytest.raises(ConfigurationError):
        s.append(s.rows[0])


def test_local_maxima_and_mirror():
    g = sg.make_grid(10.0, 200)
    psi = np.exp(-(g.x - 3) ** 2) + np.exp(-(g.x + 3) ** 2) + 0.01 * np.exp(-(g.x - 8) ** 2)
    peaks = analysis.local_maxima(g, psi)
    assert [round(x, 6) for x, _ in peaks] == [-3.0, 3.0]
    symmetric = np.exp(-(g.x - 3) ** 2) + np.exp(-(g.x + 3) ** 2)
    assert analysis.mirror_error(symmetric) < 1e-14
    assert analysis.mirror_error(psi) > 1e-3


def linear_config(**overrides):
    doc = {"params": {"alpha1": 1, "alpha2": 0, "alpha3": 0, "sigma": 2},
           "grid": {"L": math.pi, "N": 32}, "control": {"t_max": 1.0}}
    doc.update(overrides)
    return doc


@pytest.fixture
def cosine_config(tmp_path):
    g = sg.make_grid(math.pi, 32)
    path = tmp_path / "cos.txt"
    np.savetxt(path, np.cos(g.x))
    return config.from_dict(linear_config(ic={"kind": "file", "path": str(path)}))


def test_convergence_linear_exact(cosine_config):
    exact = lambda g, t: analysis.standing_wave(g, t, 1.0, 1.0)  # noqa: E731
    report = analysis.convergence_study(cosine_config, [0.2, 0.1, 0.05, 0.025], exact=exact)
    assert report.temporal_order == pytest.approx(4.0, abs=0.1)
    assert report.reference == "exact"


def test_convergence_nonlinear_self(self_convergence):
    assert self_convergence.temporal_order == pytest.approx(4.0, abs=0.2)


def test_convergence_spatial_table():
    cfg = config.from_dict({"params": {"alpha1": 1, "alpha2": 1, "alpha3": 1, "sigma": 2},
                            "grid": {"L": 60.0}, "control": {"t_max": 0.1}})
    report = analysis.convergence_study(cfg, [0.02, 0.01, 0.005], n_levels=[256, 512],
                                        reference_dt=0.0025)
    (n1, t1), (n2, t2) = report.spatial
    assert (n1, n2) == (256, 512)
    assert t1 / t2 >= 1e3 or t2 <= 1e-13


def test_convergence_needs_three_levels(cosine_config):
    with pytest.raises(ConfigurationError):
        analysis.convergence_study(cosine_config, [0.1, 0.05])


def test_convergence_aborts_on_blowup():
    cfg = config.from_dict({"params": {"alpha1": -1, "alpha2": -1, "alpha3": -1, "sigma": 2},
                            "grid": {"N": 128}, "control": {"t_max": 2.0}})
    with pytest.raises(analysis.StudyAborted) as err:
        analysis.convergence_study(cfg, [4e-3, 2e-3, 1e-3])
    assert "dt" in err.value.level
