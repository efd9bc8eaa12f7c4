"""Phase sensitivity of parity and photon-counting measurements under loss.

Both measurements act after the lossy Mach-Zehnder: phase shift, a loss
beam splitter of transmittance T on each arm, 50:50 recombination.  The
closed forms implemented here depend only on the component's photon
statistics p_n and vacuum weight p0; neither depends on which phase-shift
configuration generated the signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .probes import PathSymmetricProbe


@dataclass(frozen=True)
class MeasurementConfig:
    """Loss and phase settings for a measurement sweep."""

    transmittance: float = 1.0
    phi_start: float = 0.0
    phi_stop: float = 2.0 * math.pi
    phi_points: int = 1000

    def __post_init__(self):
        if not (0.0 <= self.transmittance <= 1.0):
            raise ValueError("transmittance must lie in [0, 1]")
        if self.phi_points < 2:
            raise ValueError("phase grid needs at least 2 points")

    def grid(self) -> np.ndarray:
        """Uniform phase grid, endpoints nudged inward by half a step to
        avoid exact trigonometric degeneracies."""
        step = (self.phi_stop - self.phi_start) / self.phi_points
        return np.linspace(self.phi_start + step / 2, self.phi_stop - step / 2, self.phi_points)


@dataclass(frozen=True)
class OutcomePmf:
    """Probability table over photon-count pairs (n_a, n_b)."""

    probs: np.ndarray  # probs[n_a, n_b], zero above the n_a + n_b <= n_max triangle
    deficit: float

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True)
class SensitivityCurve:
    phis: np.ndarray
    values: np.ndarray  # radians^2, may contain +inf
    label: str
    snl: float

    def __post_init__(self):
        phis = np.asarray(self.phis, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if phis.shape != values.shape:
            raise ValueError("phi and sensitivity arrays must match")
        phis.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "values", values)


_DERIV_FLOOR = 1e-30


def parity_expectation(probe: PathSymmetricProbe, phi, transmittance: float = 1.0):
    """Parity signal [sum_n p_n (R^n + T^n cos n phi)] / (1 + p0), R = 1-T.

    The R^0 term keeps the vacuum contribution, so at T = 1 this reduces
    exactly to the lossless form (p0 + sum p_n cos n phi)/(1 + p0).
    Accepts a scalar or array phi.
    """
    scalar = np.isscalar(phi)
    mu, _, _ = kernels.parity_curve(probe.component.probabilities, probe.p0, transmittance, np.atleast_1d(phi))
    return float(mu[0]) if scalar else mu


def parity_sensitivity(probe: PathSymmetricProbe, phi, transmittance: float = 1.0):
    """(1 - mu^2) / (d mu / d phi)^2 with the analytic derivative.

    Returns +inf where the derivative vanishes (below 1e-30); this happens
    at phi = 0 under loss, where the curve genuinely diverges.
    """
    scalar = np.isscalar(phi)
    mu, dmu, gap = kernels.parity_curve(probe.component.probabilities, probe.p0, transmittance, np.atleast_1d(phi))
    # 1 - mu^2 as gap (1 + mu): the gap is accumulated without cancellation
    num = gap * (1.0 + mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        sens = num / dmu**2
    sens = np.where(np.abs(dmu) < _DERIV_FLOOR, np.inf, sens)
    return float(sens[0]) if scalar else sens


def photon_counting_pmf(probe: PathSymmetricProbe, phi: float, transmittance: float = 1.0) -> OutcomePmf:
    """Outcome distribution p(n_a, n_b | phi) after the lossy interferometer.

    For total count m = n_a + n_b:
      p = C(m, n_a) [ A_m (1 + (-1)^{n_a} cos m phi) + B_m ],
    with A_m = p_m (T/2)^m / (1+p0) and the loss background
    B_m = (T/2)^m / (1+p0) sum_{k>=1} p_{m+k} C(m+k, m) R^k.
    At T = 1 the background vanishes and the lossless form is recovered
    exactly.  The deficit is the weight of the component tail beyond n_max.
    """
    p = probe.component.probabilities
    p0 = probe.p0
    n_max = p.size - 1
    r = 1.0 - transmittance
    table = np.zeros((n_max + 1, n_max + 1))
    # kernel weights are per n_a-parity class (factor 2^{m-1} folded in);
    # recover the per-outcome background B_m = 2 D_m / T^m * (T/2)^m
    d = kernels.loss_background_weights(p, p0, transmittance)
    for m in range(n_max + 1):
        half_t = (transmittance / 2.0) ** m
        a = p[m] * half_t / (1.0 + p0)
        b = d[m] * 2.0 / 2.0**m
        cosm = math.cos(m * phi)
        comb = 1.0
        for na in range(m + 1):
            sign = -1.0 if na % 2 else 1.0
            val = comb * (a * (1.0 + sign * cosm) + b)
            table[na, m - na] = max(val, 0.0)
            comb *= (m - na) / (na + 1.0)
    deficit = 1.0 - float(table.sum())
    return OutcomePmf(table, deficit)


def classical_fi(probe: PathSymmetricProbe, phi, transmittance: float = 1.0):
    """Fisher information of the photon-counting outcome distribution.

    Uses the analytic phi-derivative; degenerate 0/0 outcome classes are
    simplified algebraically before summation (see kernels).  Accepts a
    scalar or array phi.
    """
    scalar = np.isscalar(phi)
    fi = kernels.fi_curve(probe.component.probabilities, probe.p0, transmittance, np.atleast_1d(phi))
    return float(fi[0]) if scalar else fi


def noon_reference_fi(n_av, transmittance: float = 1.0):
    """Photon-counting Fisher information T^N N^2 of the |N,0>+|0,N> probe,
    interpolated to continuous N = n_av.

    For that probe only the N-photon coincidence class carries phase
    information and its contribution is phi-independent, so the FI is the
    single constant term; treating N as real gives the reference curve for
    energy-matched comparisons at non-integer n_av.
    """
    return transmittance**n_av * np.asarray(n_av, dtype=float) ** 2


def parity_sensitivity_curve(
    probe: PathSymmetricProbe, config: MeasurementConfig, label: str = ""
) -> SensitivityCurve:
    phis = config.grid()
    values = parity_sensitivity(probe, phis, config.transmittance)
    return SensitivityCurve(phis, values, label, 1.0 / probe.n_av)


def fi_sensitivity_curve(
    probe: PathSymmetricProbe, config: MeasurementConfig, label: str = ""
) -> SensitivityCurve:
    phis = config.grid()
    fi = classical_fi(probe, phis, config.transmittance)
    with np.errstate(divide="ignore"):
        values = np.where(fi > 0.0, 1.0 / np.where(fi > 0.0, fi, 1.0), np.inf)
    return SensitivityCurve(phis, values, label, 1.0 / probe.n_av)


def snl_beating_range(curve: SensitivityCurve) -> float:
    """Total phase measure (trapezoid over the grid) where the sensitivity
    beats the shot-noise limit."""
    below = (curve.values < curve.snl).astype(float)
    return float(np.trapezoid(below, curve.phis))
