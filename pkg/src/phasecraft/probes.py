"""Component-state families and the path-symmetric probe they induce.

A probe is (|phi>|0> + |0>|phi>) / sqrt(2(1+p0)) where p0 is the vacuum
probability of the component |phi>.  Four named families are supported
(number, coherent, squeezed vacuum, |1>/|N> superposition) plus arbitrary
custom amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .fock import (
    FockVector,
    TruncationPolicy,
    TwoModeState,
    number_moments,
    poisson_truncation,
    squeezed_truncation,
    squeezed_vacuum_amplitudes,
)


class EnergyDomainError(ValueError):
    """The requested average energy is outside the family's reachable range."""


@dataclass(frozen=True)
class ProbeSpec:
    """A named component family with its parameters.

    family is one of "number", "coherent", "squeezed", "one_n", "custom".
    Parameters: number uses n; coherent uses alpha; squeezed uses r, theta;
    one_n uses q (weight of |1>) and n; custom uses amps.
    """

    family: str
    n: int | None = None
    alpha: complex | None = None
    r: float | None = None
    theta: float = 0.0
    q: float | None = None
    amps: tuple | None = None

    def __post_init__(self):
        if self.family == "number":
            if self.n is None or self.n < 1:
                raise ValueError("number family requires N >= 1")
        elif self.family == "coherent":
            if self.alpha is None or not np.isfinite(complex(self.alpha)):
                raise ValueError("coherent family requires a finite alpha")
        elif self.family == "squeezed":
            if self.r is None or not math.isfinite(self.r) or self.r < 0:
                raise ValueError("squeezed family requires finite r >= 0")
        elif self.family == "one_n":
            if self.n is None or self.n < 2:
                raise ValueError("one_n family requires N >= 2")
            if self.q is None or not (0.0 <= self.q <= 1.0):
                raise ValueError("one_n family requires 0 <= q <= 1")
        elif self.family == "custom":
            if self.amps is None or len(self.amps) == 0:
                raise ValueError("custom family requires amplitudes")
        else:
            raise ValueError(f"unknown family {self.family!r}")


@dataclass(frozen=True)
class PathSymmetricProbe:
    """Normalized probe data derived from a component state."""

    component: FockVector
    p0: float
    n_av: float
    normalization: float

    def two_mode_state(self) -> TwoModeState:
        """Materialize (|phi>|0> + |0>|phi>) / sqrt(2(1+p0)) on the grid."""
        dim = self.component.n_max + 1
        amps = np.zeros((dim, dim), dtype=complex)
        amps[:, 0] += self.component.amps
        amps[0, :] += self.component.amps
        amps *= self.normalization
        return TwoModeState(amps)


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, n_max + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps


def build_component(spec: ProbeSpec, policy: TruncationPolicy = TruncationPolicy()) -> FockVector:
    """Construct the normalized component state for a family spec."""
    if spec.family == "number":
        amps = np.zeros(spec.n + 1, dtype=complex)
        amps[spec.n] = 1.0
        return FockVector(amps)
    if spec.family == "one_n":
        amps = np.zeros(spec.n + 1, dtype=complex)
        amps[1] = math.sqrt(spec.q)
        amps[spec.n] = math.sqrt(1.0 - spec.q)
        return FockVector(amps)
    if spec.family == "coherent":
        n_max = poisson_truncation(abs(spec.alpha) ** 2, policy)
        n_max = max(n_max, 1)
        amps = coherent_amplitudes(spec.alpha, n_max)
        tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
        return FockVector(amps, min(tail, policy.tail_tolerance))
    if spec.family == "squeezed":
        n_max = max(squeezed_truncation(spec.r, policy), 2)
        amps = squeezed_vacuum_amplitudes(spec.r, spec.theta, n_max)
        tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
        return FockVector(amps, min(tail, policy.tail_tolerance))
    if spec.family == "custom":
        vec = FockVector(np.asarray(spec.amps, dtype=complex))
        return vec.normalized()
    raise ValueError(f"unknown family {spec.family!r}")


def assemble_probe(component: FockVector) -> PathSymmetricProbe:
    """Wrap a normalized component into its path-symmetric probe."""
    norm2 = component.norm_squared()
    if abs(norm2 - 1.0) > 1e-9 + component.tail_bound:
        raise ValueError("component must be normalized")
    p0 = float(abs(component.amps[0]) ** 2)
    mean, _ = number_moments(component)
    return PathSymmetricProbe(
        component=component,
        p0=p0,
        n_av=mean / (1.0 + p0),
        normalization=1.0 / math.sqrt(2.0 * (1.0 + p0)),
    )


def _coherent_n_av(x: float) -> float:
    # x = |alpha|^2
    return x / (1.0 + math.exp(-x))


def _squeezed_n_av(r: float) -> float:
    return math.sinh(r) ** 2 / (1.0 + 1.0 / math.cosh(r))


def solve_energy_constraint(family: str, n_av_target: float, n: int | None = None) -> ProbeSpec:
    """Find the family parameter whose assembled probe has the target energy.

    number: N = n_av_target (integers only).  one_n (fixed N): the component
    has no vacuum term, so q + (1-q) N = n_av_target gives
    q = (N - n_av_target)/(N - 1).  coherent/squeezed: the energy map is
    strictly increasing in |alpha|^2 / r, solved by bisection.
    """
    if n_av_target <= 0:
        raise EnergyDomainError("infeasible energy")
    if family == "number":
        if abs(n_av_target - round(n_av_target)) > 1e-9:
            raise EnergyDomainError("infeasible energy")
        return ProbeSpec("number", n=int(round(n_av_target)))
    if family == "one_n":
        if n is None:
            raise ValueError("one_n family requires N")
        if not (1.0 <= n_av_target <= n):
            raise EnergyDomainError("infeasible energy")
        q = (n - n_av_target) / (n - 1.0)
        return ProbeSpec("one_n", n=n, q=q)
    if family == "coherent":
        hi = 4.0 * n_av_target + 4.0
        if not (_coherent_n_av(0.0) < n_av_target < _coherent_n_av(hi)):
            raise EnergyDomainError("infeasible energy")
        x = bisect(lambda v: _coherent_n_av(v) - n_av_target, 0.0, hi, xtol=1e-12)
        return ProbeSpec("coherent", alpha=math.sqrt(x))
    if family == "squeezed":
        hi = math.asinh(math.sqrt(2.0 * n_av_target)) + 2.0
        if not (_squeezed_n_av(0.0) < n_av_target < _squeezed_n_av(hi)):
            raise EnergyDomainError("infeasible energy")
        r = bisect(lambda v: _squeezed_n_av(v) - n_av_target, 0.0, hi, xtol=1e-12)
        return ProbeSpec("squeezed", r=r)
    raise ValueError(f"energy constraint not defined for family {family!r}")


def parse_state_spec(text: str) -> ProbeSpec:
    """Parse the canonical CLI state syntax.

    noon:N=2 | aooa:nav=2 | soos:nav=2 | qooq:N=8,nav=2 | custom:file=<path>
    """
    import json

    try:
        name, _, args = text.partition(":")
        kv = {}
        if args:
            for item in args.split(","):
                k, _, v = item.partition("=")
                kv[k.strip()] = v.strip()
        name = name.strip().lower()
        if name == "noon":
            return ProbeSpec("number", n=int(kv["N"]))
        if name == "aooa":
            return solve_energy_constraint("coherent", float(kv["nav"]))
        if name == "soos":
            return solve_energy_constraint("squeezed", float(kv["nav"]))
        if name == "qooq":
            return solve_energy_constraint("one_n", float(kv["nav"]), n=int(kv["N"]))
        if name == "custom":
            with open(kv["file"]) as fh:
                pairs = json.load(fh)
            amps = tuple(complex(re, im) for re, im in pairs)
            return ProbeSpec("custom", amps=amps)
    except (KeyError, ValueError, OSError) as exc:
        raise ValueError(f"invalid state spec {text!r}: {exc}") from exc
    raise ValueError(f"invalid state spec {text!r}")


def probe_from_spec(spec: ProbeSpec, policy: TruncationPolicy = TruncationPolicy()) -> PathSymmetricProbe:
    return assemble_probe(build_component(spec, policy))
