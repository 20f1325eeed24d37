"""Single-shot work quantifiers and battery-explicit transition checks.

Work is phrased as a state transition of an explicit two-level battery:
raising the battery by its gap against a thermal bath is possible exactly
when the corresponding divergence budget covers the gap.  The order-0
budget prices extraction (distillable work), the order-inf budget prices
creation (work of formation), and a fixed target state is priced by the
worst order on the non-negative line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergence import (
    DEFAULT_ALPHA_GRID,
    renyi_divergence,
    _thermal_reference,
)
from .states import Hamiltonian, IncoherentState, _check_beta, mean_energy, tensor
from .thermo_curve import check_thermal_transition
from .divergence import check_cto_transition, check_cto_with_ancilla
from .verdicts import TransitionVerdict

__all__ = [
    "BatterySpec",
    "WorkValue",
    "distillable_work",
    "work_of_formation",
    "work_fixed_output",
    "battery_transition_check",
    "embezzlement_guard",
    "average_work",
]


@dataclass(frozen=True)
class BatterySpec:
    """Two-level work reservoir with levels ``{0, gap}``."""

    gap: float
    initial_level: int
    final_level: int

    def __post_init__(self) -> None:
        if self.gap < 0.0 or not math.isfinite(self.gap):
            raise ValueError("battery gap must be finite and >= 0")
        if self.initial_level not in (0, 1) or self.final_level not in (0, 1):
            raise ValueError("battery levels are 0 (empty) or 1 (charged)")

    def hamiltonian(self) -> Hamiltonian:
        return Hamiltonian.of([0.0, self.gap])

    def initial_state(self) -> IncoherentState:
        return IncoherentState.pure(self.hamiltonian(), self.initial_level)

    def final_state(self) -> IncoherentState:
        return IncoherentState.pure(self.hamiltonian(), self.final_level)


@dataclass(frozen=True)
class WorkValue:
    value: float
    kind: str
    minimizing_alpha: float | None = None


def distillable_work(state: IncoherentState, beta: float) -> WorkValue:
    """Largest battery gap chargeable from ``state``: order-0 divergence over beta."""
    beta = _check_beta(beta)
    p, q, m, _ = _thermal_reference(state, beta)
    return WorkValue(renyi_divergence(p, q, 0.0, counts=m) / beta, "distillable", 0.0)


def work_of_formation(state: IncoherentState, beta: float) -> WorkValue:
    """Smallest battery gap whose discharge creates ``state``: order-inf divergence over beta.

    Unbounded only if the state has weight outside the thermal support,
    which cannot happen for finite energies at positive beta.
    """
    beta = _check_beta(beta)
    p, q, m, _ = _thermal_reference(state, beta)
    return WorkValue(renyi_divergence(p, q, math.inf, counts=m) / beta, "formation", math.inf)


def _golden_refine(f, lo: float, hi: float, iterations: int = 80) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
        if b - a < 1e-9 * max(1.0, abs(a)):
            break
    x = c if fc <= fd else d
    return x, min(fc, fd)


def work_fixed_output(
    rho: IncoherentState, rho_prime: IncoherentState, beta: float, alphas=None
) -> WorkValue:
    """Battery gap priced by the worst non-negative order for ``rho -> rho_prime``.

    The infimum is taken over an order grid plus the limits, with a local
    golden-section refinement around the best grid point.  A negative value
    means the transition consumes work rather than yielding it.
    """
    beta = _check_beta(beta)
    if rho.hamiltonian != rho_prime.hamiltonian:
        raise ValueError("both states must share one Hamiltonian")
    p, q, m, _ = _thermal_reference(rho, beta)
    p_prime = rho_prime.probability_array()

    def gap(alpha: float) -> float:
        return renyi_divergence(p, q, alpha, counts=m) - renyi_divergence(
            p_prime, q, alpha, counts=m
        )

    alphas = DEFAULT_ALPHA_GRID if alphas is None else tuple(float(a) for a in alphas)
    grid = sorted({a for a in alphas if a >= 0.0 and math.isfinite(a)} | {0.0, 1.0})
    values = [(gap(a), a) for a in grid]
    values.append((gap(math.inf), math.inf))
    best_value, best_alpha = min(values, key=lambda t: t[0])

    if math.isfinite(best_alpha):
        k = grid.index(best_alpha)
        lo = grid[k - 1] if k > 0 else best_alpha
        hi = grid[k + 1] if k + 1 < len(grid) else best_alpha
        if hi > lo:
            refined_alpha, refined_value = _golden_refine(gap, lo, hi)
            if refined_value < best_value:
                best_value, best_alpha = refined_value, refined_alpha

    return WorkValue(best_value / beta, "fixed-output", best_alpha)


def battery_transition_check(
    rho: IncoherentState,
    rho_prime: IncoherentState,
    battery: BatterySpec,
    beta: float,
    model: str = "thermal",
    alphas=None,
) -> TransitionVerdict:
    """Feasibility of ``rho (x) battery_in -> rho_prime (x) battery_out``.

    The joint spectrum adds system and battery energies (no interaction
    term).  ``model`` selects the single-shot curve test (``"thermal"``),
    the full second-laws test (``"catalytic"``) or its ancilla-assisted
    variant (``"catalytic-ancilla"``).
    """
    joint_initial = tensor(rho, battery.initial_state())
    joint_final = tensor(rho_prime, battery.final_state())
    if model == "thermal":
        return check_thermal_transition(joint_initial, joint_final, beta)
    if model == "catalytic":
        return check_cto_transition(joint_initial, joint_final, beta, alphas=alphas)
    if model == "catalytic-ancilla":
        return check_cto_with_ancilla(joint_initial, joint_final, beta, alphas=alphas)
    raise ValueError(f"unknown model {model!r}")


def embezzlement_guard(omega, omega_prime, epsilon: float, d_c: float, constant: float = 1.0) -> bool:
    """Whether a returned catalyst is close enough to rule out embezzling.

    The allowed total-variation error shrinks with the catalyst dimension:
    ``distance <= constant * epsilon / ln(d_c)``.  The scaling constant is
    exposed because only the asymptotic rate is canonical.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be > 0")
    if d_c < 2.0:
        raise ValueError("catalyst dimension must be at least 2")
    w = np.asarray(omega, dtype=float)
    w_prime = np.asarray(omega_prime, dtype=float)
    if w.shape != w_prime.shape:
        raise ValueError("catalyst states must share one dimension")
    distance = 0.5 * float(np.sum(np.abs(w - w_prime)))
    return distance <= constant * epsilon / math.log(d_c)


def average_work(rho_w: IncoherentState, rho_w_prime: IncoherentState) -> float:
    """Mean battery energy change between two states of one battery Hamiltonian."""
    if rho_w.hamiltonian != rho_w_prime.hamiltonian:
        raise ValueError("battery states must share one Hamiltonian")
    return mean_energy(rho_w_prime) - mean_energy(rho_w)
