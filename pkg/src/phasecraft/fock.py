"""Truncated Fock-space linear algebra for one and two bosonic modes.

States are plain complex amplitude arrays over the number basis 0..n_max,
wrapped in small immutable containers that carry an explicit bound on the
probability weight lost to truncation.  All operations here are pure
functions; nothing mutates its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm


class TruncationError(ValueError):
    """Raised when a requested accuracy cannot be met on the truncated basis."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Accuracy contract for basis truncation.

    tail_tolerance bounds the probability weight allowed beyond n_max;
    n_max_cap is a hard ceiling on the basis size.
    """

    tail_tolerance: float = 1e-12
    n_max_cap: int = 512

    def __post_init__(self):
        if not (0.0 < self.tail_tolerance < 1.0):
            raise ValueError("tail_tolerance must lie in (0, 1)")
        if self.n_max_cap < 1:
            raise ValueError("n_max_cap must be positive")


@dataclass(frozen=True)
class FockVector:
    """Single-mode state on the truncated number basis.

    amps[n] is the amplitude of |n>; tail_bound is an upper bound on the
    probability weight the untruncated state carries beyond n_max.
    """

    amps: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("degenerate truncation")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be non-negative")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_max(self) -> int:
        return self.amps.size - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def normalized(self) -> "FockVector":
        norm = math.sqrt(self.norm_squared())
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockVector(self.amps / norm, self.tail_bound)

    def padded(self, n_max: int) -> "FockVector":
        if n_max < self.n_max:
            raise ValueError("padding cannot shrink the basis")
        out = np.zeros(n_max + 1, dtype=complex)
        out[: self.amps.size] = self.amps
        return FockVector(out, self.tail_bound)


@dataclass(frozen=True)
class TwoModeState:
    """Two-mode state; amps[na, nb] is the amplitude of |na, nb>."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1] or amps.size == 0:
            raise ValueError("two-mode amplitudes must be a square matrix")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_max(self) -> int:
        return self.amps.shape[0] - 1

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def normalized(self) -> "TwoModeState":
        norm = math.sqrt(self.norm_squared())
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return TwoModeState(self.amps / norm)


def vacuum(n_max: int) -> FockVector:
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[0] = 1.0
    return FockVector(amps)


def number_state(n: int, n_max: int | None = None) -> FockVector:
    if n < 0:
        raise ValueError("photon number must be non-negative")
    n_max = n if n_max is None else n_max
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def lowering_apply(state: FockVector) -> FockVector:
    """Apply the annihilation operator: out[n] = sqrt(n+1) * amps[n+1].

    The result is generally unnormalized.  The amplitude that would come
    from level n_max+1 is unknown, so the tail bound grows accordingly.
    """
    if state.n_max < 1:
        raise ValueError("degenerate truncation")
    n = np.arange(1, state.n_max + 1)
    out = np.zeros(state.n_max + 1, dtype=complex)
    out[:-1] = np.sqrt(n) * state.amps[1:]
    return FockVector(out, (state.n_max + 1) * state.tail_bound)


def raising_apply(state: FockVector) -> FockVector:
    """Apply the creation operator: out[n+1] = sqrt(n+1) * amps[n]; the
    basis grows by one level so no weight is lost."""
    out = np.zeros(state.n_max + 2, dtype=complex)
    n = np.arange(0, state.n_max + 1)
    out[1:] = np.sqrt(n + 1) * state.amps
    return FockVector(out, state.tail_bound)


def number_moments(state: FockVector) -> tuple[float, float]:
    """Mean and variance of the photon number.

    Requires a normalized state.  The additive error from truncation is
    bounded by tail_bound * n_max**2 for the variance and tail_bound * n_max
    for the mean; callers choosing n_max via a TruncationPolicy keep this
    negligible.
    """
    p = state.probabilities
    if abs(p.sum() + 0.0 - 1.0) > 1e-10 + state.tail_bound:
        raise ValueError("number_moments requires a normalized state")
    n = np.arange(state.n_max + 1)
    mean = float(np.dot(n, p))
    second = float(np.dot(n * n, p))
    return mean, second - mean * mean


def mandel_q(state: FockVector) -> float:
    """Mandel Q factor: variance/mean - 1 of the photon number."""
    mean, var = number_moments(state)
    if mean <= 0.0:
        raise ValueError("Mandel-Q undefined for zero energy")
    return var / mean - 1.0


def phase_rotation(state: FockVector, x: float) -> FockVector:
    """Apply exp(i*x*n) to each number component; norm preserved exactly."""
    n = np.arange(state.n_max + 1)
    return FockVector(np.exp(1j * x * n) * state.amps, state.tail_bound)


def overlap(a: FockVector, b: FockVector) -> complex:
    """Inner product <a|b> (conjugation on a), zero-padding to equal n_max."""
    size = max(a.amps.size, b.amps.size)
    if a.amps.size < size:
        a = a.padded(size - 1)
    if b.amps.size < size:
        b = b.padded(size - 1)
    return complex(np.vdot(a.amps, b.amps))


def squeezed_vacuum_amplitudes(r: float, theta: float, n_max: int) -> np.ndarray:
    """Closed-form number-basis amplitudes of S(r e^{i theta})|0>.

    amps[2k] = (1/sqrt(cosh r)) * (-e^{i theta} tanh r)^k * sqrt((2k)!)/(2^k k!).
    Computed by the term ratio to stay finite at large k.
    """
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[0] = 1.0 / math.sqrt(math.cosh(r))
    ratio_base = -np.exp(1j * theta) * math.tanh(r)
    coeff = amps[0]
    for k in range(1, n_max // 2 + 1):
        # c_{2k}/c_{2k-2} = ratio_base * sqrt((2k-1)/(2k))
        coeff = coeff * ratio_base * math.sqrt((2 * k - 1) / (2 * k))
        amps[2 * k] = coeff
    return amps


def squeeze_matrix(
    r: float,
    theta: float,
    n_max: int,
    buffer: int | None = None,
    certified_cols: int | None = None,
) -> np.ndarray:
    """Truncated matrix of the squeeze unitary S(xi) = exp[(xi* a^2 - xi a^+2)/2].

    Built as a matrix exponential on a buffered space (buffer extra levels,
    default max(20, n_max/2)) and cropped to (n_max+1) x (n_max+1).  The crop
    cannot be unitary on all of the retained basis -- squeezing spreads |j>
    over roughly e^{2r} j levels -- so the returned block is certified
    column-by-column: the first certified_cols columns (default
    (n_max+1) e^{-2r} / 2) must form a near-isometry, else TruncationError.
    Callers that need accuracy on more columns should raise n_max.
    """
    if r < 0:
        raise ValueError("squeezing magnitude must be non-negative")
    if buffer is None:
        buffer = max(20, n_max // 2)
    if certified_cols is None:
        certified_cols = max(1, int(0.5 * (n_max + 1) * math.exp(-2.0 * r)))
    if certified_cols > n_max + 1:
        raise ValueError("cannot certify more columns than the matrix has")
    dim = n_max + 1 + buffer
    xi = r * np.exp(1j * theta)
    n = np.arange(dim - 2)
    # a^2 on the buffered space: (a^2)[n, n+2] = sqrt((n+1)(n+2))
    a2 = np.zeros((dim, dim), dtype=complex)
    a2[n, n + 2] = np.sqrt((n + 1.0) * (n + 2.0))
    gen = 0.5 * (np.conj(xi) * a2 - xi * a2.conj().T)
    full = expm(gen)
    mat = np.array(full[: n_max + 1, : n_max + 1])

    block = mat[:, :certified_cols]
    defect = np.abs(block.conj().T @ block - np.eye(certified_cols)).max()
    if defect > 1e-8:
        raise TruncationError("truncation insufficient")
    return mat


def squeeze_apply(state: FockVector, r: float, theta: float) -> FockVector:
    mat = squeeze_matrix(r, theta, state.n_max)
    return FockVector(mat @ state.amps, state.tail_bound)


def mode_unitary_matrix(transmittance: float, reflection_sign: int = +1) -> np.ndarray:
    """2x2 beam-splitter mode matrix [[sqrt(T), i s sqrt(R)], [i s sqrt(R), sqrt(T)]]."""
    if not (0.0 <= transmittance <= 1.0):
        raise ValueError("transmittance must lie in [0, 1]")
    t = math.sqrt(transmittance)
    rr = math.sqrt(1.0 - transmittance)
    s = 1j * reflection_sign
    return np.array([[t, s * rr], [s * rr, t]], dtype=complex)


def apply_mode_unitary(amps: np.ndarray, u2: np.ndarray, axes: tuple[int, int] = (0, 1)) -> np.ndarray:
    """Apply a two-mode linear-optical unitary to an amplitude tensor.

    u2 transforms the creation operators as
        a+ -> u2[0,0] a+ + u2[1,0] b+,   b+ -> u2[0,1] a+ + u2[1,1] b+,
    where (a, b) are the tensor axes in `axes`.  Components whose output
    occupation exceeds the truncation are dropped; for states with all
    support at total occupation <= n_max (per selected axis pair) the map
    is exactly unitary.
    """
    amps = np.asarray(amps, dtype=complex)
    ax_a, ax_b = axes
    dim = amps.shape[ax_a]
    if amps.shape[ax_b] != dim:
        raise ValueError("axes must have equal dimension")
    moved = np.moveaxis(amps, (ax_a, ax_b), (0, 1))
    rest = moved.shape[2:]
    work = moved.reshape(dim, dim, -1)
    out = np.zeros_like(work)

    # precompute log-factorials for the amplitude weights
    lf = np.array([math.lgamma(k + 1) for k in range(2 * dim - 1)])
    u00, u10 = u2[0, 0], u2[1, 0]
    u01, u11 = u2[0, 1], u2[1, 1]
    binom = [np.array([math.comb(n, k) for k in range(n + 1)], dtype=float) for n in range(dim)]
    pow_u00 = u00 ** np.arange(dim)
    pow_u10 = u10 ** np.arange(dim)
    pow_u01 = u01 ** np.arange(dim)
    pow_u11 = u11 ** np.arange(dim)

    for na in range(dim):
        # (u00 a+ + u10 b+)^na expansion: j photons to mode a
        wa = binom[na] * pow_u00[: na + 1] * pow_u10[na::-1]
        for nb in range(dim):
            col = work[na, nb]
            if not np.any(col):
                continue
            wb = binom[nb] * pow_u01[: nb + 1] * pow_u11[nb::-1]
            # outer over (j, l): output state |j+l, na+nb-j-l>
            weight = np.outer(wa, wb)
            base = 0.5 * (lf[na] + lf[nb])
            for j in range(na + 1):
                for l in range(nb + 1):
                    oa = j + l
                    ob = na + nb - oa
                    if oa >= dim or ob >= dim:
                        continue
                    w = weight[j, l]
                    if w == 0:
                        continue
                    scale = math.exp(0.5 * (lf[oa] + lf[ob]) - base)
                    out[oa, ob] += w * scale * col
    out = out.reshape((dim, dim) + rest)
    return np.moveaxis(out, (0, 1), (ax_a, ax_b))


def beam_splitter_apply(state: TwoModeState, transmittance: float, reflection_sign: int = +1) -> TwoModeState:
    """Two-mode beam splitter with convention a -> sqrt(T) a + i sqrt(R) b.

    reflection_sign=-1 flips the reflected phase to -i sqrt(R); applying the
    splitter at the same T with both signs composes to the identity.
    """
    u2 = mode_unitary_matrix(transmittance, reflection_sign)
    return TwoModeState(apply_mode_unitary(state.amps, u2))


def poisson_truncation(mean: float, policy: TruncationPolicy) -> int:
    """Smallest n_max with a Chernoff-bounded Poisson tail below tolerance."""
    if mean <= 0.0:
        return 0
    n = max(1, int(math.ceil(mean)))
    while n <= policy.n_max_cap:
        # P(X > n) <= exp(-mean) (e*mean/(n+1))^(n+1) for n+1 > mean
        m = n + 1
        if m > mean:
            log_tail = -mean + m * (1.0 + math.log(mean / m))
            if log_tail < math.log(policy.tail_tolerance):
                return n
        n += 1
    raise TruncationError("truncation insufficient")


def squeezed_truncation(r: float, policy: TruncationPolicy) -> int:
    """Smallest even n_max with a geometric-ratio squeezed-vacuum tail bound
    below tolerance; the pair probabilities decay at least as tanh^2 r."""
    if r == 0.0:
        return 0
    g = math.tanh(r) ** 2
    p = 1.0 / math.cosh(r)  # p_0
    k = 0
    while 2 * k <= policy.n_max_cap:
        tail = p * g / (1.0 - g)  # bound on weight beyond level 2k
        if tail < policy.tail_tolerance:
            return 2 * k
        k += 1
        p *= g * (2 * k - 1) / (2 * k)
    raise TruncationError("truncation insufficient")
