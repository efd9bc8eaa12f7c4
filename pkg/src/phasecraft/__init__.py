"""Phase-estimation limits for path-symmetric entangled probes in a lossy
Mach-Zehnder interferometer."""

from .fock import (
    FockVector,
    TruncationError,
    TruncationPolicy,
    TwoModeState,
    beam_splitter_apply,
    lowering_apply,
    mandel_q,
    number_moments,
    overlap,
    phase_rotation,
    squeeze_matrix,
)
from .generation import (
    GenerationReport,
    HybridState,
    coherent_op_apply,
    cps_apply,
    decomposable_generation,
    generate_qooq_from_noon,
    generate_soos,
    project_plus_plus,
)
from .interferometer import (
    MeasurementConfig,
    OutcomePmf,
    SensitivityCurve,
    classical_fi,
    parity_expectation,
    parity_sensitivity,
    photon_counting_pmf,
    snl_beating_range,
)
from .metrology import (
    PhaseAveragedState,
    PhaseGenerator,
    QfiReport,
    phase_averaged_state,
    qcrb,
    qfi_closed_form,
    qfi_mixed,
    qfi_pure,
    snl,
)
from .probes import (
    PathSymmetricProbe,
    ProbeSpec,
    assemble_probe,
    build_component,
    parse_state_spec,
    probe_from_spec,
    solve_energy_constraint,
)
from .study import optimize_qooq_n, sample_random_components

__version__ = "0.1.0"
