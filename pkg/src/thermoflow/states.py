"""Energy-incoherent states, Hamiltonians, Gibbs states and entropic functionals.

A state is a list of atoms ``(probability, energy, multiplicity)``: the
probability is *per copy*, so an atom with multiplicity ``m`` stands for
``m`` identical eigenvalue slots.  Multiplicities make n-fold i.i.d.
product states affordable (type classes grow polynomially in ``n`` instead
of exponentially).

All logarithms are natural; entropies and divergences are in nats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SUPPORT_EPS",
    "MASS_TOL",
    "Hamiltonian",
    "IncoherentState",
    "partition_function",
    "gibbs",
    "mean_energy",
    "renyi_entropy",
    "tensor",
    "state_to_json_dict",
    "state_from_json_dict",
    "load_state_file",
]

# Atoms with per-copy probability above this threshold count as support.
SUPPORT_EPS = 1e-15

# Total probability mass must match 1 this tightly.
MASS_TOL = 1e-12


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0.0) or not math.isfinite(beta):
        raise ValueError(f"inverse temperature must be finite and > 0, got {beta}")
    return beta


@dataclass(frozen=True)
class Hamiltonian:
    """Finite list of energy levels with integer degeneracies.

    ``energies[i]`` appears ``multiplicities[i]`` times in the spectrum.
    Repeated energy values across entries are allowed.
    """

    energies: tuple[float, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.energies) == 0:
            raise ValueError("Hamiltonian needs at least one level")
        if len(self.energies) != len(self.multiplicities):
            raise ValueError("energies and multiplicities must be index-aligned")
        if not all(math.isfinite(e) for e in self.energies):
            raise ValueError("energies must be finite")
        if not all(isinstance(m, int) and m >= 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be integers >= 1")

    @classmethod
    def of(cls, energies: Iterable[float], multiplicities: Iterable[int] | None = None) -> "Hamiltonian":
        energies = tuple(float(e) for e in energies)
        if multiplicities is None:
            mults = tuple(1 for _ in energies)
        else:
            mults = tuple(int(m) for m in multiplicities)
        return cls(energies, mults)

    @classmethod
    def degenerate(cls, dimension: int, energy: float = 0.0) -> "Hamiltonian":
        """Fully degenerate spectrum: ``dimension`` copies of one energy."""
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        return cls((float(energy),), (int(dimension),))

    @property
    def num_atoms(self) -> int:
        return len(self.energies)

    @property
    def dimension(self) -> int:
        """Total number of eigenvalue slots (multiplicity-weighted)."""
        return int(sum(self.multiplicities))

    def is_fully_degenerate(self) -> bool:
        e0 = self.energies[0]
        return all(e == e0 for e in self.energies)

    def energy_array(self) -> np.ndarray:
        return np.asarray(self.energies, dtype=float)

    def multiplicity_array(self) -> np.ndarray:
        return np.asarray(self.multiplicities, dtype=float)


@dataclass(frozen=True)
class IncoherentState:
    """Probability distribution over the levels of a declared Hamiltonian.

    ``probabilities[i]`` is the per-copy weight of level ``i``; the atom
    carries ``hamiltonian.multiplicities[i]`` copies, so the normalization
    reads ``sum_i m_i p_i = 1``.  Zero-probability atoms are kept: the
    declared support matters for beta-ordering and order-0 quantities.
    """

    probabilities: tuple[float, ...]
    hamiltonian: Hamiltonian

    def __post_init__(self) -> None:
        if len(self.probabilities) != self.hamiltonian.num_atoms:
            raise ValueError("one probability per Hamiltonian level required")
        if any(p < 0.0 or not math.isfinite(p) for p in self.probabilities):
            raise ValueError("probabilities must be finite and >= 0")
        mass = sum(m * p for m, p in zip(self.hamiltonian.multiplicities, self.probabilities))
        if abs(mass - 1.0) > MASS_TOL:
            raise ValueError(f"total mass {mass!r} differs from 1 by more than {MASS_TOL}")

    @classmethod
    def from_vector(cls, probabilities: Sequence[float], hamiltonian: Hamiltonian | None = None) -> "IncoherentState":
        """State from a plain probability vector; defaults to a fully degenerate Hamiltonian."""
        probs = tuple(float(p) for p in probabilities)
        if hamiltonian is None:
            hamiltonian = Hamiltonian.of([0.0] * len(probs))
        return cls(probs, hamiltonian)

    @classmethod
    def pure(cls, hamiltonian: Hamiltonian, level: int) -> "IncoherentState":
        """All mass on one copy of ``level``; that level must be non-degenerate."""
        if hamiltonian.multiplicities[level] != 1:
            raise ValueError("pure states require a non-degenerate target level")
        probs = [0.0] * hamiltonian.num_atoms
        probs[level] = 1.0
        return cls(tuple(probs), hamiltonian)

    @property
    def atoms(self) -> tuple[tuple[float, float, int], ...]:
        return tuple(
            (p, e, m)
            for p, e, m in zip(self.probabilities, self.hamiltonian.energies, self.hamiltonian.multiplicities)
        )

    def probability_array(self) -> np.ndarray:
        return np.asarray(self.probabilities, dtype=float)

    def expanded_probabilities(self) -> np.ndarray:
        """Multiplicity-expanded eigenvalue vector (one entry per copy)."""
        return np.repeat(self.probability_array(), self.hamiltonian.multiplicities)

    def support_size(self) -> int:
        return int(
            sum(m for p, m in zip(self.probabilities, self.hamiltonian.multiplicities) if p > SUPPORT_EPS)
        )


def partition_function(hamiltonian: Hamiltonian, beta: float) -> float:
    """Multiplicity-weighted sum of Boltzmann factors, ``sum_i m_i exp(-beta E_i)``."""
    beta = _check_beta(beta)
    m = hamiltonian.multiplicity_array()
    z = float(np.sum(m * np.exp(-beta * hamiltonian.energy_array())))
    if not (z > 0.0 and math.isfinite(z)):
        raise ValueError(f"partition function is not finite and positive: {z}")
    return z


def gibbs(hamiltonian: Hamiltonian, beta: float) -> IncoherentState:
    """Thermal state: per-copy weight ``exp(-beta E_i) / Z``.

    Computed with the spectrum shifted by its minimum, so large ``beta * E``
    stays well-conditioned.
    """
    beta = _check_beta(beta)
    e = hamiltonian.energy_array()
    m = hamiltonian.multiplicity_array()
    shifted = np.exp(-beta * (e - e.min()))
    weights = shifted / float(np.sum(m * shifted))
    return IncoherentState(tuple(float(w) for w in weights), hamiltonian)


def mean_energy(state: IncoherentState) -> float:
    """Average energy ``sum_i m_i p_i E_i``."""
    h = state.hamiltonian
    return float(np.sum(h.multiplicity_array() * state.probability_array() * h.energy_array()))


def _as_weighted_distribution(state_or_probs) -> tuple[np.ndarray, np.ndarray]:
    """Return (per-copy probabilities, copy counts) for a state or plain vector."""
    if isinstance(state_or_probs, IncoherentState):
        return state_or_probs.probability_array(), state_or_probs.hamiltonian.multiplicity_array()
    p = np.asarray(state_or_probs, dtype=float)
    if p.ndim != 1:
        raise ValueError("expected a 1-d probability vector")
    return p, np.ones_like(p)


def renyi_entropy(state_or_probs, alpha: float) -> float:
    """Order-``alpha`` entropy ``sgn(alpha)/(1-alpha) * ln sum_i p_i^alpha`` in nats.

    ``alpha = 1`` is the Shannon entropy (continuity limit), ``alpha = 0``
    the log support size, ``alpha = +inf`` is ``-ln max_i p_i``.  For
    ``alpha < 0`` a zero-probability atom makes the quantity divergent; the
    documented sentinel ``+inf`` is returned (no finite value exists).
    Accepts an :class:`IncoherentState` or a plain probability vector.
    """
    p, m = _as_weighted_distribution(state_or_probs)
    alpha = float(alpha)
    if math.isnan(alpha) or alpha == -math.inf:
        raise ValueError("alpha must be a real number or +inf")
    if alpha == 0.0:
        support = p > SUPPORT_EPS
        return float(np.log(np.sum(m[support])))
    if alpha == 1.0:
        # exact-zero semantics (0 ln 0 = 0): tiny atoms with large counts matter
        positive = p > 0.0
        ps = p[positive]
        return float(-np.sum(m[positive] * ps * np.log(ps)))
    if alpha == math.inf:
        return float(-np.log(np.max(p)))
    positive = p > 0.0
    if alpha < 0.0 and not positive.all():
        return math.inf
    ps = p[positive]
    total = float(np.sum(m[positive] * np.power(ps, alpha)))
    sign = 1.0 if alpha >= 0 else -1.0
    return sign / (1.0 - alpha) * math.log(total)


def tensor(a: IncoherentState, b: IncoherentState) -> IncoherentState:
    """Product state on the joint spectrum with additive energies."""
    probs = []
    energies = []
    mults = []
    for pa, ea, ma in a.atoms:
        for pb, eb, mb in b.atoms:
            probs.append(pa * pb)
            energies.append(ea + eb)
            mults.append(ma * mb)
    joint = Hamiltonian(tuple(energies), tuple(mults))
    return IncoherentState(tuple(probs), joint)


# --- JSON state files -------------------------------------------------------
#
# Schema: {"beta": number, "energies": [number], "multiplicities": [int]?,
#          "probabilities": [number]}, energies and probabilities
# index-aligned, probabilities per copy.

def state_to_json_dict(state: IncoherentState, beta: float) -> dict:
    return {
        "beta": float(beta),
        "energies": list(state.hamiltonian.energies),
        "multiplicities": list(state.hamiltonian.multiplicities),
        "probabilities": list(state.probabilities),
    }


def state_from_json_dict(payload: dict) -> tuple[IncoherentState, float]:
    if not isinstance(payload, dict):
        raise ValueError("state file must contain a JSON object")
    missing = {"beta", "energies", "probabilities"} - payload.keys()
    if missing:
        raise ValueError(f"state file missing keys: {sorted(missing)}")
    beta = _check_beta(payload["beta"])
    energies = payload["energies"]
    mults = payload.get("multiplicities")
    probs = payload["probabilities"]
    if len(energies) != len(probs):
        raise ValueError("energies and probabilities must have equal length")
    h = Hamiltonian.of(energies, mults)
    return IncoherentState(tuple(float(p) for p in probs), h), beta


def load_state_file(path: str) -> tuple[IncoherentState, float]:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return state_from_json_dict(payload)
