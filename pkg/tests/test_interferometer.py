import math

import numpy as np
import pytest

from phasecraft.interferometer import (
    MeasurementConfig,
    classical_fi,
    fi_sensitivity_curve,
    noon_reference_fi,
    parity_expectation,
    parity_sensitivity,
    parity_sensitivity_curve,
    photon_counting_pmf,
    snl_beating_range,
)
from phasecraft.metrology import qfi_closed_form_probe
from phasecraft.probes import ProbeSpec, probe_from_spec, solve_energy_constraint


def _probe(family, n_av, n=None):
    return probe_from_spec(solve_energy_constraint(family, n_av, n=n))


def test_parity_signal_lossless_number_state():
    probe = _probe("number", 2.0)
    phis = np.linspace(0.1, 3.0, 7)
    mu = parity_expectation(probe, phis, 1.0)
    np.testing.assert_allclose(mu, np.cos(2.0 * phis), atol=1e-12)


def test_parity_signal_loss_offset():
    probe = _probe("number", 2.0)
    # mu(phi) = R^2 + T^2 cos(2 phi) for the two-photon component
    t = 0.8
    mu = parity_expectation(probe, np.array([0.9]), t)[0]
    assert abs(mu - ((1 - t) ** 2 + t**2 * math.cos(1.8))) < 1e-12


def test_parity_sensitivity_diverges_at_stationary_phase():
    probe = _probe("number", 2.0)
    # the derivative vanishes identically at phi = 0 under loss while the
    # numerator keeps a loss pedestal, so the curve genuinely diverges
    assert math.isinf(parity_sensitivity(probe, np.array([0.0]), 0.9)[0])
    # near the pi/2 stationary point it blows up without hitting the
    # exact-zero sentinel
    assert parity_sensitivity(probe, np.array([math.pi / 2]), 0.9)[0] > 1e20


def test_parity_sensitivity_matches_qcrb_near_zero_lossless():
    for family, n in [("number", None), ("coherent", None), ("one_n", 8)]:
        probe = _probe(family, 2.0, n=n)
        sens = parity_sensitivity(probe, np.array([1e-5]), 1.0)[0]
        assert sens == pytest.approx(1.0 / qfi_closed_form_probe(probe), rel=1e-7)


def test_counting_pmf_normalized_with_loss():
    for family, n in [("coherent", None), ("one_n", 8)]:
        probe = _probe(family, 2.0, n=n)
        pmf = photon_counting_pmf(probe, 0.7, 0.85)
        assert pmf.probs.min() >= 0.0
        assert abs(pmf.probs.sum() + pmf.deficit - 1.0) < 1e-12
        assert abs(pmf.deficit) < 1e-9


def test_lossless_fi_equals_qfi_and_is_flat():
    probe = _probe("one_n", 2.0, n=8)
    phis = np.linspace(0.05, 6.2, 200)
    fi = classical_fi(probe, phis, 1.0)
    fq = qfi_closed_form_probe(probe)
    np.testing.assert_allclose(fi, fq, rtol=1e-10)


def test_fi_drops_under_loss():
    probe = _probe("coherent", 2.0)
    lossless = classical_fi(probe, 1.0, 1.0)
    lossy = classical_fi(probe, 1.0, 0.85)
    assert lossy < lossless


def test_noon_reference_matches_integer_probe():
    for n in (2, 3, 4):
        probe = _probe("number", float(n))
        assert classical_fi(probe, 1.1, 0.9) == pytest.approx(noon_reference_fi(n, 0.9), rel=1e-12)


def test_measurement_config_grid_avoids_endpoints():
    config = MeasurementConfig(0.9, 0.0, 2.0 * math.pi, 100)
    grid = config.grid()
    assert grid.size == 100
    assert grid[0] > 0.0
    assert grid[-1] < 2.0 * math.pi
    with pytest.raises(ValueError):
        MeasurementConfig(1.5, 0.0, 1.0, 10)


def test_snl_beating_range_full_when_always_below():
    probe = _probe("number", 2.0)
    config = MeasurementConfig(1.0, 0.0, 2.0 * math.pi, 400)
    curve = parity_sensitivity_curve(probe, config, "x")
    # lossless two-photon parity sits at 1/4 < 1/2 except isolated poles
    assert snl_beating_range(curve) > 0.97 * 2.0 * math.pi


def test_curves_report_snl_from_probe_energy():
    probe = _probe("coherent", 2.0)
    config = MeasurementConfig(0.9, 0.0, 2.0 * math.pi, 50)
    assert fi_sensitivity_curve(probe, config, "x").snl == pytest.approx(0.5, abs=1e-9)
