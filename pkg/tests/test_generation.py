import math

import numpy as np
import pytest

from phasecraft.fock import squeezed_vacuum_amplitudes
from phasecraft.generation import (
    HybridState,
    coherent_op_apply,
    cps_apply,
    decomposable_generation,
    generate_qooq_from_noon,
    generate_soos,
    project_plus_plus,
)


def _hybrid_vacuum(dim):
    amps = np.zeros((dim, dim, 2, 2), dtype=complex)
    amps[0, 0, 0, 0] = 1.0
    return HybridState(amps)


def test_cps_is_unitary_and_sector_selective():
    rng = np.random.default_rng(11)
    amps = rng.normal(size=(4, 4, 2, 2)) + 1j * rng.normal(size=(4, 4, 2, 2))
    amps /= np.linalg.norm(amps)
    state = HybridState(amps)
    out = cps_apply(state, 0.9, ("a", "u"))
    assert abs(out.norm_squared() - 1.0) < 1e-12
    # the H sector of qubit u is untouched
    np.testing.assert_allclose(out.amps[:, :, 0, :], state.amps[:, :, 0, :], atol=1e-14)


def test_cps_rejects_bad_pairing():
    with pytest.raises(ValueError):
        cps_apply(_hybrid_vacuum(3), 0.5, ("c", "u"))


def test_projection_weight_and_normalization():
    state = _hybrid_vacuum(3)
    reduced, weight = project_plus_plus(state)
    assert weight == pytest.approx(0.25)
    assert abs(np.sum(np.abs(reduced.amps) ** 2) - 1.0) < 1e-12


def test_squeezed_pipeline_hits_target():
    report = generate_soos(0.3)
    assert report.fidelity >= 1.0 - 1e-6
    assert 0.0 < report.success_probability < 1.0
    out = report.output.amps
    # the output has the doubled squeeze in each arm with shared vacuum
    comp = squeezed_vacuum_amplitudes(0.6, 0.0, out.shape[0] - 1)
    overlap_arm = np.vdot(comp, out[:, 0])
    assert abs(overlap_arm) > 0.5


def test_squeezed_pipeline_degrades_off_operating_point():
    report = generate_soos(0.3, x=math.pi / 2 * 0.9)
    assert report.fidelity < 1.0 - 1e-3


def test_generic_recipe_agrees_with_direct_assembly():
    report = decomposable_generation([("squeeze", 0.3, 0.0)], math.pi / 2, n_max=64)
    assert report.fidelity >= 1.0 - 1e-8
    assert not report.degenerate


def test_phase_commuting_recipe_flagged_degenerate():
    report = decomposable_generation([("rotate", 0.4)], math.pi / 2, n_max=16)
    assert report.degenerate


def test_coherent_op_shifts_and_lowers():
    from phasecraft.fock import FockVector

    state = FockVector(np.array([0.0, 1.0, 0.0], dtype=complex))
    out = coherent_op_apply(state, 2.0)
    # (a + 2)|1> = |0> + 2|1>
    np.testing.assert_allclose(out.amps, [1.0, 2.0, 0.0], atol=1e-14)


def test_cascade_output_support_and_weights():
    for big_n in (2, 4, 5):
        report = generate_qooq_from_noon(big_n, 1.0)
        out = report.output.amps
        assert report.fidelity >= 1.0 - 1e-9
        nz = {(i, j) for i in range(out.shape[0]) for j in range(out.shape[1])
              if abs(out[i, j]) > 1e-12}
        assert nz == {(1, 0), (0, 1), (big_n + 1, 0), (0, big_n + 1)}
        # single-photon weight dominates: sqrt((N+1)!) against alpha^N
        assert abs(out[1, 0]) > abs(out[big_n + 1, 0])


def test_cascade_rejects_trivial_size():
    with pytest.raises(ValueError):
        generate_qooq_from_noon(1, 1.0)
