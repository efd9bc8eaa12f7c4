"""State-generation pipelines: conditional phase shifts with entangled
polarization ancillas, heralded projection, and the coherent-operation
cascade turning a high number state into a |1>/|N+1> superposition.

The ancillas are abstract two-level systems; only the gate algebra is
modeled, not the optical hardware realizing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    FockVector,
    TruncationError,
    TruncationPolicy,
    TwoModeState,
    squeeze_matrix,
    squeezed_truncation,
    squeezed_vacuum_amplitudes,
)

_H, _V = 0, 1
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class HybridState:
    """Two bosonic modes plus two polarization qubits.

    amps[na, nb, qu, qd] with qubit indices 0 = H, 1 = V.
    """

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 4 or amps.shape[2:] != (2, 2):
            raise ValueError("hybrid amplitudes must have shape (dim, dim, 2, 2)")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class GenerationReport:
    output: TwoModeState
    fidelity: float
    success_probability: float
    degenerate: bool = False


def cps_apply(state: HybridState, x: float, pairing: tuple[str, str]) -> HybridState:
    """Conditional phase shift: e^{i x n} on the paired mode, restricted to
    the paired qubit's V sector.  Unitary."""
    mode, qubit = pairing
    if mode not in ("a", "b") or qubit not in ("u", "d"):
        raise ValueError("pairing must be a (mode, qubit) pair from {a,b} x {u,d}")
    dim = state.amps.shape[0]
    phases = np.exp(1j * x * np.arange(dim))
    mode_axis = 0 if mode == "a" else 1
    qubit_axis = 2 if qubit == "u" else 3
    shape = [1, 1, 1, 1]
    shape[mode_axis] = dim
    factor = phases.reshape(shape)
    out = np.array(state.amps)
    sector = [slice(None)] * 4
    sector[qubit_axis] = _V
    out[tuple(sector)] = (factor * out)[tuple(sector)]
    return HybridState(out)


def project_plus_plus(state: HybridState) -> tuple[TwoModeState, float]:
    """Project both qubits onto |+> = (|H>+|V>)/sqrt(2).

    Returns the renormalized two-mode state and the heralding weight."""
    reduced = state.amps.sum(axis=(2, 3)) / 2.0
    weight = float(np.sum(np.abs(reduced) ** 2))
    if weight < 1e-30:
        raise ValueError("post-selection failed")
    return TwoModeState(reduced / math.sqrt(weight)), weight


def _entangled_ancilla_product(component_a: np.ndarray, component_b: np.ndarray) -> HybridState:
    """Mode product state tensored with (|H,V> + |V,H>)/sqrt(2)."""
    dim = component_a.size
    amps = np.zeros((dim, dim, 2, 2), dtype=complex)
    pair = np.outer(component_a, component_b) / _SQRT2
    amps[:, :, _H, _V] = pair
    amps[:, :, _V, _H] = pair
    return HybridState(amps)


def _path_symmetric_target(component: np.ndarray) -> np.ndarray:
    target = np.zeros((component.size, component.size), dtype=complex)
    target[:, 0] += component
    target[0, :] += component
    return target


def _fidelity(target: np.ndarray, output: np.ndarray) -> float:
    num = abs(np.vdot(target, output)) ** 2
    den = float(np.sum(np.abs(target) ** 2) * np.sum(np.abs(output) ** 2))
    return num / den


def generate_soos(
    r: float,
    theta: float = 0.0,
    x: float = math.pi / 2,
    policy: TruncationPolicy = TruncationPolicy(),
) -> GenerationReport:
    """Full squeezed-component pipeline.

    Two squeezed vacua |xi>|xi>, entangled ancillas, one CPS per mode,
    |+>|+> heralding, then a local squeeze S(xi) on each mode.  At
    x = pi/2 the conditioned arm is anti-squeezed, so the local squeezes
    collapse one arm to vacuum and double the other: the target is
    |2xi>|0> + |0>|2xi> (normalized with its own vacuum weight)."""
    if r <= 0:
        raise ValueError("squeezing magnitude must be positive")
    n_req = squeezed_truncation(2.0 * r, policy)

    # the local squeezes must be accurate on every level the heralded state
    # populates; grow the cutoff until the cropped unitary certifies there
    n_max = min(policy.n_max_cap, max(2 * n_req, n_req + 20))
    while True:
        try:
            local = squeeze_matrix(r, theta, n_max, certified_cols=n_req + 1)
            break
        except TruncationError:
            if n_max >= policy.n_max_cap:
                raise
            n_max = min(policy.n_max_cap, 2 * n_max)

    comp = squeezed_vacuum_amplitudes(r, theta, n_max)
    state = _entangled_ancilla_product(comp, comp)
    state = cps_apply(state, x, ("a", "u"))
    state = cps_apply(state, x, ("b", "d"))
    heralded, weight = project_plus_plus(state)

    out = local @ heralded.amps @ local.T
    output = TwoModeState(out).normalized()

    target = _path_symmetric_target(squeezed_vacuum_amplitudes(2.0 * r, theta, n_max))
    return GenerationReport(
        output=output,
        fidelity=_fidelity(target, output.amps),
        success_probability=weight,
    )


def decomposable_generation(
    u_program,
    x: float,
    n_max: int = 64,
) -> GenerationReport:
    """Generic pipeline for components of the form U^+ e^{i x n} U |0>.

    u_program is a gate recipe, a sequence of ("squeeze", r, theta) and
    ("rotate", angle) steps applied left to right.  Runs the CPS pipeline
    with U-prepared modes, heralds on |+>|+>, undoes U on each mode, and
    compares against the directly assembled component.  Recipes whose
    component stays in the vacuum (U commuting with the phase, or x = 0)
    are flagged degenerate."""
    u = np.eye(n_max + 1, dtype=complex)
    for step in u_program:
        if step[0] == "squeeze":
            u = squeeze_matrix(step[1], step[2], n_max) @ u
        elif step[0] == "rotate":
            u = np.diag(np.exp(1j * step[1] * np.arange(n_max + 1))) @ u
        else:
            raise ValueError(f"unknown gate {step[0]!r}")

    prepared = u[:, 0]  # U|0>
    state = _entangled_ancilla_product(prepared, prepared)
    state = cps_apply(state, x, ("a", "u"))
    state = cps_apply(state, x, ("b", "d"))
    heralded, weight = project_plus_plus(state)

    udag = u.conj().T
    out = udag @ heralded.amps @ udag.T
    output = TwoModeState(out).normalized()

    component = udag @ (np.exp(1j * x * np.arange(n_max + 1)) * prepared)
    target = _path_symmetric_target(component)
    degenerate = abs(output.amps[0, 0]) ** 2 > 1.0 - 1e-10
    return GenerationReport(
        output=output,
        fidelity=_fidelity(target, output.amps),
        success_probability=weight,
        degenerate=degenerate,
    )


def coherent_op_apply(state: FockVector, c: complex) -> FockVector:
    """Apply a + c: out[n] = sqrt(n+1) amps[n+1] + c amps[n].  Unnormalized
    by design."""
    if state.n_max < 1:
        raise ValueError("degenerate truncation")
    n = np.arange(1, state.n_max + 1)
    out = np.array(state.amps, dtype=complex) * c
    out[:-1] += np.sqrt(n) * state.amps[1:]
    return FockVector(out, (state.n_max + 2) * state.tail_bound)


def _coherent_op_on_axis(amps: np.ndarray, c: complex, axis: int) -> np.ndarray:
    moved = np.moveaxis(amps, axis, 0)
    out = moved * c
    n = np.arange(1, moved.shape[0]).reshape((-1,) + (1,) * (moved.ndim - 1))
    out[:-1] += np.sqrt(n) * moved[1:]
    return np.moveaxis(out, 0, axis)


def generate_qooq_from_noon(
    big_n: int,
    alpha: complex,
    policy: TruncationPolicy = TruncationPolicy(),
) -> GenerationReport:
    """Coherent-operation cascade on |N+1, 0> + |0, N+1>.

    Applies (a + alpha w^k)(b + alpha w^k) for k = 1..N with w the N-th
    root of unity.  The cascade factorizes to a^N + (-1)^{N-1} alpha^N on
    each arm, so the output support is exactly {1, N+1} and the target is
    sqrt((N+1)!) |1,0;0,1> + (-1)^{N-1} alpha^N |N+1,0;0,N+1>."""
    if big_n < 2:
        raise ValueError("cascade requires N >= 2")
    dim = big_n + 2
    amps = np.zeros((dim, dim), dtype=complex)
    amps[big_n + 1, 0] = 1.0 / _SQRT2
    amps[0, big_n + 1] = 1.0 / _SQRT2

    for k in range(1, big_n + 1):
        c = alpha * np.exp(2j * math.pi * k / big_n)
        amps = _coherent_op_on_axis(amps, c, 0)
        amps = _coherent_op_on_axis(amps, c, 1)

    target = np.zeros((dim, dim), dtype=complex)
    root = math.sqrt(math.factorial(big_n + 1))
    tail = (-1.0) ** (big_n - 1) * alpha**big_n
    target[1, 0] = target[0, 1] = root
    target[big_n + 1, 0] = target[0, big_n + 1] = tail

    success = float(np.sum(np.abs(amps) ** 2))  # input was normalized
    output = TwoModeState(amps).normalized()
    return GenerationReport(
        output=output,
        fidelity=_fidelity(target, output.amps),
        success_probability=success,
    )
