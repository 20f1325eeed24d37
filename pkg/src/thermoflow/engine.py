"""Nanoscale heat-engine efficiency bounds and a quasi-static sweep.

The closed form says: a quasi-static engine on a qubit cold bath reaches
the Carnot efficiency exactly when the gap figure of merit stays at or
below one, and otherwise lands at ``1 / (1 + beta_hot * omega /
(beta_cold - beta_hot))``.  The sweep below is an independent numerical
estimator: it bisects the largest extractable battery gap subject to the
non-negative second laws and reports work, drawn heat and efficiency per
final cold-bath temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergence import DEFAULT_ALPHA_GRID, renyi_divergence
from .states import renyi_entropy

__all__ = [
    "EngineSpec",
    "EfficiencyReport",
    "QuasiStaticPoint",
    "carnot",
    "omega",
    "eta_nano",
    "near_perfect_ratio",
    "quasi_static_estimate",
    "report",
]

OMEGA_CONVENTIONS = ("verbatim", "alt")


@dataclass(frozen=True)
class EngineSpec:
    """Two baths, a qubit cold-bath spectrum and a battery failure tolerance."""

    beta_hot: float
    beta_cold: float
    gaps: tuple[float, ...]
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.beta_hot < self.beta_cold):
            raise ValueError("need 0 < beta_hot < beta_cold (cold bath strictly colder)")
        if len(self.gaps) == 0 or any(g <= 0.0 or not math.isfinite(g) for g in self.gaps):
            raise ValueError("cold-bath gaps must be positive and finite")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("battery failure tolerance must lie in [0, 1)")


def carnot(beta_hot: float, beta_cold: float) -> float:
    """Macroscopic efficiency ceiling ``1 - beta_hot / beta_cold``."""
    if not (0.0 < beta_hot < beta_cold):
        raise ValueError("need 0 < beta_hot < beta_cold")
    return 1.0 - beta_hot / beta_cold


def omega(spec: EngineSpec, convention: str = "verbatim", z_beta: float | None = None) -> float:
    """Gap figure of merit, minimized over the cold-bath qubits.

    ``convention="verbatim"`` evaluates
    ``(beta_cold - beta_hot) * gap / (Z * exp(beta_cold * gap))`` with the
    qubit partition function ``Z = 1 + exp(-z_beta * gap)``; that value is
    bounded above by 0.28 for every parameter choice, which would leave the
    above-one branch of the efficiency dichotomy unreachable.
    ``convention="alt"`` therefore cancels the exponential against the
    denominator, giving ``(beta_cold - beta_hot) * gap / Z``: it grows with
    the gap and is the variant the quasi-static sweep reproduces.
    ``z_beta`` defaults to ``beta_cold``.
    """
    if convention not in OMEGA_CONVENTIONS:
        raise ValueError(f"convention must be one of {OMEGA_CONVENTIONS}")
    zb = spec.beta_cold if z_beta is None else float(z_beta)
    values = []
    for gap in spec.gaps:
        z = 1.0 + math.exp(-zb * gap)
        value = (spec.beta_cold - spec.beta_hot) * gap / z
        if convention == "verbatim":
            value /= math.exp(spec.beta_cold * gap)
        values.append(value)
    return min(values)


def eta_nano(omega_value: float, beta_hot: float, beta_cold: float) -> float:
    """Quasi-static efficiency limit for a given figure of merit.

    At or below one the Carnot value is attainable; above one the limit is
    ``1 / (1 + beta_hot * omega / (beta_cold - beta_hot))``, which meets the
    Carnot value continuously at exactly one.
    """
    if omega_value < 0.0:
        raise ValueError("omega must be >= 0")
    eta_c = carnot(beta_hot, beta_cold)
    if omega_value <= 1.0:
        return eta_c
    return 1.0 / (1.0 + beta_hot * omega_value / (beta_cold - beta_hot))


def near_perfect_ratio(battery_initial, battery_final, w_ext: float) -> float:
    """Battery entropy production per unit of extracted work.

    Work is near perfect when this ratio can be driven arbitrarily small
    along a sequence of engines.
    """
    if w_ext <= 0.0:
        raise ValueError("w_ext must be > 0")
    return (renyi_entropy(battery_final, 1.0) - renyi_entropy(battery_initial, 1.0)) / w_ext


@dataclass(frozen=True)
class QuasiStaticPoint:
    beta_prime: float
    work: float
    heat_drawn: float
    efficiency: float


@dataclass(frozen=True)
class EfficiencyReport:
    carnot: float
    omega: float
    eta_nano: float
    estimator: tuple[QuasiStaticPoint, ...] | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.eta_nano <= self.carnot + 1e-12 and self.carnot < 1.0):
            raise ValueError("report violates 0 < eta_nano <= carnot < 1")


def _qubit_gibbs(beta: float, gap: float) -> np.ndarray:
    w = np.array([1.0, math.exp(-beta * gap)])
    return w / w.sum()


def _qubit_mean_energy(beta: float, gap: float) -> float:
    return gap * math.exp(-beta * gap) / (1.0 + math.exp(-beta * gap))


def default_beta_prime_grid(spec: EngineSpec) -> tuple[float, ...]:
    """Final cold-bath temperatures approaching the initial one, coarse to fine."""
    span = spec.beta_cold - spec.beta_hot
    return tuple(spec.beta_cold - span * f for f in (0.5, 0.2, 0.1, 0.05, 0.02, 0.01))


def quasi_static_estimate(
    spec: EngineSpec,
    beta_prime_grid=None,
    alphas=None,
) -> list[QuasiStaticPoint]:
    """Numerical efficiency sweep for a single-qubit cold bath.

    For each final inverse temperature ``beta_prime`` the largest battery
    gap ``W`` is bisected such that every non-negative-order divergence to
    the ambient (hot) thermal state is non-increasing for the joint
    cold-qubit/battery transition, with final battery state
    ``(epsilon, 1 - epsilon)`` on levels ``{0, W}``.  Heat drawn from the
    hot bath follows from total mean-energy conservation; grid points with
    no extractable work report zero.

    Note the failure tolerance acts as an entropy sink: when the cold
    bath's energy scale is small against ``epsilon`` the ratio of gap to
    drawn heat can exceed the macroscopic Carnot value.  The bound is
    meaningful in the near-perfect regime where the sink is negligible.
    """
    if len(spec.gaps) != 1:
        raise ValueError("the sweep handles a single-qubit cold bath only")
    gap = spec.gaps[0]
    eps = spec.epsilon
    if alphas is None:
        alpha_set = tuple(a for a in DEFAULT_ALPHA_GRID if a >= 0.0) + (math.inf,)
    else:
        alpha_set = tuple(float(a) for a in alphas)
        if any(a < 0.0 for a in alpha_set):
            raise ValueError("the sweep constrains non-negative orders only")
    grid = default_beta_prime_grid(spec) if beta_prime_grid is None else tuple(beta_prime_grid)
    if any(bp <= 0.0 or bp > spec.beta_cold for bp in grid):
        raise ValueError("beta_prime values must lie in (0, beta_cold]")

    cold_initial = _qubit_gibbs(spec.beta_cold, gap)
    q_cold = _qubit_gibbs(spec.beta_hot, gap)

    def feasible(beta_prime: float, w: float) -> bool:
        cold_final = _qubit_gibbs(beta_prime, gap)
        q_w = _qubit_gibbs(spec.beta_hot, w)
        p_init = np.kron(cold_initial, np.array([1.0, 0.0]))
        p_fin = np.kron(cold_final, np.array([eps, 1.0 - eps]))
        q = np.kron(q_cold, q_w)
        for a in alpha_set:
            d_init = renyi_divergence(p_init, q, a)
            if d_init == math.inf:
                continue
            if d_init < renyi_divergence(p_fin, q, a) - 1e-10:
                return False
        return True

    points: list[QuasiStaticPoint] = []
    for beta_prime in grid:
        hi = 1e-9 / spec.beta_hot
        w_max = 0.0
        if feasible(beta_prime, hi):
            while feasible(beta_prime, hi) and hi < 1e9:
                hi *= 2.0
            lo = hi / 2.0
            for _ in range(120):
                mid = 0.5 * (lo + hi)
                if feasible(beta_prime, mid):
                    lo = mid
                else:
                    hi = mid
            w_max = lo
        delta_cold = _qubit_mean_energy(beta_prime, gap) - _qubit_mean_energy(spec.beta_cold, gap)
        heat = delta_cold + (1.0 - eps) * w_max
        efficiency = w_max / heat if heat > 0.0 and w_max > 0.0 else 0.0
        points.append(QuasiStaticPoint(beta_prime, w_max, heat, efficiency))
    return points


def report(
    spec: EngineSpec,
    convention: str = "verbatim",
    with_estimator: bool = False,
    beta_prime_grid=None,
) -> EfficiencyReport:
    om = omega(spec, convention=convention)
    rows = None
    if with_estimator:
        rows = tuple(quasi_static_estimate(spec, beta_prime_grid=beta_prime_grid))
    return EfficiencyReport(
        carnot=carnot(spec.beta_hot, spec.beta_cold),
        omega=om,
        eta_nano=eta_nano(om, spec.beta_hot, spec.beta_cold),
        estimator=rows,
    )
