"""Brute-force reference implementations used by the test suite.

Everything here recomputes measurement statistics from first principles on
an explicit four-mode state (two signal arms plus one environment mode per
arm), deliberately sharing nothing with the closed-form measurement code in
`interferometer`.  Small truncations only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import apply_mode_unitary
from .interferometer import OutcomePmf, parity_expectation, photon_counting_pmf
from .metrology import PhaseGenerator
from .probes import PathSymmetricProbe

_SQRT2 = math.sqrt(2.0)

# Output-port labeling: the recombination splitter is fixed so that the
# counting distribution carries its interference sign on the n_a outcome,
# matching the closed forms; the parity-read port is that same port.
_RECOMBINE = np.array([[1.0, -1.0], [1.0, 1.0]]) / _SQRT2


@dataclass(frozen=True)
class OracleConfig:
    n_max_small: int = 6
    fd_step: float = 1e-5

    def __post_init__(self):
        if self.n_max_small > 8:
            raise ValueError("oracle truncation capped at 8")
        if not (1e-8 < self.fd_step < 1e-2):
            raise ValueError("finite-difference step out of range")


def _loss_matrix(transmittance: float) -> np.ndarray:
    t = math.sqrt(transmittance)
    r = math.sqrt(1.0 - transmittance)
    return np.array([[t, -r], [r, t]])


def full_mzi_pmf(
    probe: PathSymmetricProbe,
    phi: float,
    transmittance: float,
    cfg: OracleConfig = OracleConfig(),
    gen: PhaseGenerator = PhaseGenerator.SINGLE_ARM,
) -> OutcomePmf:
    """Explicit interferometer simulation: phase shift, per-arm loss beam
    splitter into an environment mode, 50:50 recombination, number-basis
    detection with the environment summed out."""
    support = int(np.max(np.nonzero(np.abs(probe.component.amps) > 0)[0]))
    if support > cfg.n_max_small:
        raise ValueError("oracle scale exceeded")
    dim = support + 1

    state = np.zeros((dim, dim, dim, dim), dtype=complex)  # (a, b, env_a, env_b)
    comp = probe.component.amps[:dim]
    state[:, 0, 0, 0] += comp
    state[0, :, 0, 0] += comp
    state *= probe.normalization

    na = np.arange(dim).reshape(dim, 1, 1, 1)
    nb = np.arange(dim).reshape(1, dim, 1, 1)
    if gen is PhaseGenerator.SINGLE_ARM:
        state = state * np.exp(1j * phi * nb)
    else:
        state = state * np.exp(-1j * phi * (na - nb) / 2.0)

    loss = _loss_matrix(transmittance)
    state = apply_mode_unitary(state, loss, axes=(0, 2))
    state = apply_mode_unitary(state, loss, axes=(1, 3))
    state = apply_mode_unitary(state, _RECOMBINE, axes=(0, 1))

    probs = np.sum(np.abs(state) ** 2, axis=(2, 3))
    table = np.zeros((probe.component.n_max + 1, probe.component.n_max + 1))
    table[:dim, :dim] = probs
    return OutcomePmf(table, 1.0 - float(probs.sum()))


def parity_from_pmf(pmf: OutcomePmf) -> float:
    """Parity on the interference-sign port: sum (-1)^{n_a} p(n_a, n_b)."""
    signs = np.where(np.arange(pmf.probs.shape[0]) % 2, -1.0, 1.0)
    return float(np.einsum("a,ab->", signs, pmf.probs))


def finite_difference_fi(
    probe: PathSymmetricProbe,
    phi: float,
    transmittance: float,
    cfg: OracleConfig = OracleConfig(),
) -> float:
    """Fisher information via central differences of the counting pmf."""
    h = cfg.fd_step
    center = photon_counting_pmf(probe, phi, transmittance).probs
    plus = photon_counting_pmf(probe, phi + h, transmittance).probs
    minus = photon_counting_pmf(probe, phi - h, transmittance).probs
    deriv = (plus - minus) / (2.0 * h)
    mask = center > 1e-13
    return float(np.sum(deriv[mask] ** 2 / center[mask]))


def finite_difference_parity_sensitivity(
    probe: PathSymmetricProbe,
    phi: float,
    transmittance: float,
    cfg: OracleConfig = OracleConfig(),
) -> float:
    """Parity sensitivity with a numerically differentiated signal."""
    h = cfg.fd_step
    mu = parity_expectation(probe, phi, transmittance)
    dmu = (
        parity_expectation(probe, phi + h, transmittance)
        - parity_expectation(probe, phi - h, transmittance)
    ) / (2.0 * h)
    return (1.0 - mu**2) / dmu**2
