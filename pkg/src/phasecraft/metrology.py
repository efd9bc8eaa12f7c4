"""Quantum Fisher information, Cramer-Rao bound, and shot-noise limit.

Two routes to the QFI are kept deliberately separate: a variance computation
on the materialized two-mode state, and the closed form in terms of the
component's mean photon number, Mandel Q and vacuum weight.  Their agreement
is a correctness check, not an implementation shortcut.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import mandel_q, number_moments
from .probes import PathSymmetricProbe


class PhaseGenerator(enum.Enum):
    """Which phase-shift configuration generates the signal."""

    TWO_ARM_SYMMETRIC = "two-arm-symmetric"  # (n_a - n_b)/2
    SINGLE_ARM = "single-arm"  # n_b


@dataclass(frozen=True)
class QfiReport:
    f_q: float
    qcrb: float
    n_av: float
    mandel_q: float
    p0: float
    repetitions: int = 1


def qfi_pure(probe: PathSymmetricProbe, gen: PhaseGenerator = PhaseGenerator.TWO_ARM_SYMMETRIC) -> float:
    """4 Var(G) on the materialized two-mode pure state."""
    state = probe.two_mode_state()
    dim = state.n_max + 1
    na, nb = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    if gen is PhaseGenerator.TWO_ARM_SYMMETRIC:
        g = 0.5 * (na - nb)
    else:
        g = nb.astype(float)
    w = np.abs(state.amps) ** 2
    total = w.sum()
    mean = float((g * w).sum() / total)
    second = float((g * g * w).sum() / total)
    return 4.0 * (second - mean * mean)


def qfi_closed_form(mean: float, q_m: float, p0: float) -> float:
    """QFI from component statistics: mean (mean + 1 + Q_M) / (1 + p0)."""
    if mean < 0 or q_m < -1.0 - 1e-9 or not (0.0 <= p0 <= 1.0):
        raise ValueError("invalid component statistics")
    return mean * (mean + 1.0 + q_m) / (1.0 + p0)


def qfi_closed_form_probe(probe: PathSymmetricProbe) -> float:
    mean, _ = number_moments(probe.component)
    if mean == 0.0:
        return 0.0
    return qfi_closed_form(mean, mandel_q(probe.component), probe.p0)


_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _default_block_vectors() -> np.ndarray:
    # rows: eigenvectors in the {|n,0>, |0,n>} block basis
    return np.array([[_INV_SQRT2, _INV_SQRT2], [_INV_SQRT2, -_INV_SQRT2]])


@dataclass(frozen=True)
class PhaseAveragedState:
    """Block-diagonal mixture of two-mode number-superposition states.

    weights[n] for n >= 1 is the weight on (|n,0> + |0,n>)/sqrt(2);
    weights[0] is the weight on |0,0>.  block_vectors holds, per n >= 1,
    the eigenvector pair spanning the {|n,0>, |0,n>} block (rows), the
    first carrying weights[n] and the second weight zero.
    """

    weights: np.ndarray
    block_vectors: np.ndarray = field(default_factory=_default_block_vectors)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        v = np.asarray(self.block_vectors, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "block_vectors", v)


def phase_averaged_state(probe: PathSymmetricProbe) -> PhaseAveragedState:
    """Phase-average the probe into its number-block mixture.

    The n >= 1 blocks carry p_n/(1+p0); the vacuum block carries
    2 p0/(1+p0), which is what trace normalization forces for the n = 0
    term.  Weights sum to one.
    """
    p = probe.component.probabilities
    weights = np.empty_like(p)
    weights[0] = 2.0 * probe.p0 / (1.0 + probe.p0)
    weights[1:] = p[1:] / (1.0 + probe.p0)
    return PhaseAveragedState(weights)


def _block_generator(n: int, gen: PhaseGenerator) -> np.ndarray:
    # G restricted to the {|n,0>, |0,n>} block
    if gen is PhaseGenerator.TWO_ARM_SYMMETRIC:
        return np.diag([n / 2.0, -n / 2.0]).astype(complex)
    return np.diag([0.0, float(n)]).astype(complex)


def qfi_mixed(mixed: PhaseAveragedState, gen: PhaseGenerator = PhaseGenerator.TWO_ARM_SYMMETRIC) -> float:
    """QFI of the block-diagonal mixture.

    F_Q = 2 sum_{i,j} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2 over the
    eigensystem completed with the zero-weight partner vector of each block;
    pairs with l_i + l_j < 1e-14 are dropped.  G is number-diagonal, so
    vectors from different blocks never couple and the residual Fock
    complement contributes nothing.
    """
    vecs = np.asarray(mixed.block_vectors)
    gram = vecs @ vecs.conj().T
    if np.abs(gram - np.eye(2)).max() > 1e-10:
        raise ValueError("invalid mixed state")
    weights = mixed.weights
    if abs(weights.sum() - 1.0) > 1e-10:
        raise ValueError("invalid mixed state")

    total = 0.0
    for n in range(1, weights.size):
        g = vecs @ _block_generator(n, gen) @ vecs.conj().T
        lams = (weights[n], 0.0)
        for i in range(2):
            for j in range(2):
                denom = lams[i] + lams[j]
                if denom < 1e-14:
                    continue
                total += 2.0 * (lams[i] - lams[j]) ** 2 / denom * abs(g[i, j]) ** 2
    # vacuum block: G|0,0> = 0 for both generators, no contribution
    return total


def qcrb(f_q: float, m: int = 1) -> float:
    """Quantum Cramer-Rao bound 1/(m F_Q) for m repetitions."""
    if m < 1:
        raise ValueError("repetitions must be >= 1")
    if f_q <= 0.0:
        raise ValueError("uninformative probe")
    return 1.0 / (m * f_q)


def snl(n_av: float) -> float:
    """Shot-noise limit 1/N_av."""
    if n_av <= 0.0:
        raise ValueError("shot-noise limit requires positive energy")
    return 1.0 / n_av


def qfi_report(probe: PathSymmetricProbe, m: int = 1) -> QfiReport:
    mean, _ = number_moments(probe.component)
    q_m = mandel_q(probe.component) if mean > 0 else 0.0
    f_q = qfi_closed_form(mean, q_m, probe.p0) if mean > 0 else 0.0
    return QfiReport(
        f_q=f_q,
        qcrb=qcrb(f_q, m) if f_q > 0 else math.inf,
        n_av=probe.n_av,
        mandel_q=q_m,
        p0=probe.p0,
        repetitions=m,
    )
