import math

import numpy as np
import pytest

from phasecraft.metrology import (
    PhaseGenerator,
    phase_averaged_state,
    qcrb,
    qfi_closed_form,
    qfi_closed_form_probe,
    qfi_mixed,
    qfi_pure,
    qfi_report,
    snl,
)
from phasecraft.probes import ProbeSpec, probe_from_spec, solve_energy_constraint


def _probe(family, n_av, n=None):
    return probe_from_spec(solve_energy_constraint(family, n_av, n=n))


def test_closed_form_from_moments():
    # F = <n>(<n> + 1 + Q)/(1 + p0); number state: Q = -1, p0 = 0 -> N^2
    assert qfi_closed_form(3.0, -1.0, 0.0) == 9.0
    # Poissonian component, no vacuum overlap correction beyond p0
    assert abs(qfi_closed_form(2.0, 0.0, 0.0) - 6.0) < 1e-12


def test_variance_route_agrees_with_closed_form():
    for family, n in [("number", None), ("coherent", None), ("squeezed", None), ("one_n", 8)]:
        probe = _probe(family, 2.0, n=n)
        assert abs(qfi_pure(probe) - qfi_closed_form_probe(probe)) < 1e-9 * qfi_closed_form_probe(probe)


def test_generator_choice_matters_for_pure_states():
    probe = _probe("coherent", 2.0)
    two_arm = qfi_pure(probe, PhaseGenerator.TWO_ARM_SYMMETRIC)
    single = qfi_pure(probe, PhaseGenerator.SINGLE_ARM)
    assert single > two_arm + 1e-3
    # with no vacuum overlap the two generators coincide
    noon = _probe("number", 2.0)
    assert abs(
        qfi_pure(noon, PhaseGenerator.SINGLE_ARM) - qfi_pure(noon, PhaseGenerator.TWO_ARM_SYMMETRIC)
    ) < 1e-9


def test_dephased_state_weights_sum_to_one():
    probe = _probe("coherent", 2.0)
    mixed = phase_averaged_state(probe)
    assert abs(mixed.weights.sum() - 1.0) < 1e-9
    assert mixed.weights[0] == pytest.approx(2.0 * probe.p0 / (1.0 + probe.p0), rel=1e-12)


def test_dephased_qfi_is_generator_independent():
    for family, n in [("coherent", None), ("squeezed", None), ("one_n", 8)]:
        probe = _probe(family, 2.0, n=n)
        mixed = phase_averaged_state(probe)
        closed = qfi_closed_form_probe(probe)
        for gen in PhaseGenerator:
            assert abs(qfi_mixed(mixed, gen) - closed) < 1e-9 * closed


def test_one_n_qfi_linear_in_energy():
    for big_n in (8, 100):
        for n_av in (1.5, 2.0, 3.0):
            probe = _probe("one_n", n_av, n=big_n)
            expected = (big_n + 1) * n_av - big_n
            assert abs(qfi_closed_form_probe(probe) - expected) < 1e-9 * expected


def test_qcrb_and_snl():
    assert qcrb(4.0) == 0.25
    assert snl(2.0) == 0.5
    with pytest.raises(ValueError):
        qcrb(0.0)


def test_report_fields_consistent():
    probe = _probe("squeezed", 2.0)
    report = qfi_report(probe)
    assert report.qcrb == pytest.approx(1.0 / report.f_q, rel=1e-12)
    assert report.n_av == pytest.approx(2.0, abs=1e-8)
    assert report.mandel_q > 0.0  # squeezed vacuum is super-Poissonian


def test_mixed_state_rejects_bad_weights():
    probe = _probe("coherent", 2.0)
    mixed = phase_averaged_state(probe)
    broken = type(mixed)(weights=mixed.weights * 2.0, block_vectors=mixed.block_vectors)
    with pytest.raises(ValueError):
        qfi_mixed(broken)
