"""Pure-numpy fallback for the hot measurement kernels.

Same contracts as the compiled extension in _fastkernels.pyx; selected at
import time by phasecraft.kernels when the extension is unavailable (or
forced via PHASECRAFT_BACKEND=python).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def loss_background_weights(p: np.ndarray, p0: float, transmittance: float) -> np.ndarray:
    """Per-total-count loss background D_m.

    D_m = T^m / (2 (1+p0)) * sum_{k>=1} p_{m+k} C(m+k, m) R^k, the
    phase-independent part of the outcome probability summed over one
    n_a-parity class (binomial weight 2^{m-1} folded in).
    """
    p = np.asarray(p, dtype=float)
    n_max = p.size - 1
    r = 1.0 - transmittance
    d = np.zeros(n_max + 1)
    for m in range(n_max + 1):
        acc = 0.0
        c = 1.0  # C(m+k, m), built by recurrence
        rk = 1.0
        for k in range(1, n_max - m + 1):
            c *= (m + k) / k
            rk *= r
            acc += p[m + k] * c * rk
        d[m] = transmittance**m / (2.0 * (1.0 + p0)) * acc
    return d


def parity_curve(
    p: np.ndarray, p0: float, transmittance: float, phis: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parity signal, its phi-derivative, and the gap 1 - mu on a phase grid.

    mu(phi)  = sum_n p_n (R^n + T^n cos n phi) / (1 + p0)   (R^0 == 1)
    dmu(phi) = -sum_n p_n T^n n sin(n phi) / (1 + p0)

    The gap is accumulated as sum_n p_n [(1 - R^n - T^n)
    + 2 T^n sin^2(n phi / 2)] / (1 + p0), all terms non-negative, so it
    stays fully significant where mu -> 1 and 1 - mu^2 would cancel.
    """
    p = np.asarray(p, dtype=float)
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    n = np.arange(p.size)
    r = 1.0 - transmittance
    tn = transmittance**n
    rn = r**n
    rn[0] = 1.0
    arg = np.outer(n, phis)
    flat = 1.0 - rn - tn
    flat[0] = 0.0
    gap = (p @ (flat[:, None] + 2.0 * tn[:, None] * np.sin(arg / 2.0) ** 2)) / (1.0 + p0)
    dmu = -((p * tn * n) @ np.sin(arg)) / (1.0 + p0)
    return 1.0 - gap, dmu, gap


def fi_curve(p: np.ndarray, p0: float, transmittance: float, phis: np.ndarray) -> np.ndarray:
    """Classical Fisher information of the photon-counting distribution.

    Outcomes with total count m and fixed parity of n_a share the same
    probability shape A_m (1 + s cos m phi) + D_m up to a common binomial
    weight, so the outcome sum collapses to two terms per m.  Where the
    loss background D_m vanishes the 0/0 ratio is replaced by its algebraic
    simplification A_m m^2 (1 - s cos m phi).
    """
    p = np.asarray(p, dtype=float)
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    n_max = p.size - 1
    d = loss_background_weights(p, p0, transmittance)
    fi = np.zeros(phis.size)
    for m in range(1, n_max + 1):
        a = p[m] * transmittance**m / (2.0 * (1.0 + p0))
        if a == 0.0:
            continue  # background-only totals carry no phi dependence
        if d[m] == 0.0:
            # the two n_a-parity classes sum to a constant, the algebraic
            # limit of the 0/0 ratio at the degenerate phases
            fi += 2.0 * a * m * m
        else:
            c = np.cos(m * phis)
            num = (a * m * np.sin(m * phis)) ** 2
            fi += num / (a * (1.0 + c) + d[m])
            fi += num / (a * (1.0 - c) + d[m])
    return fi
