import numpy as np
import pytest

from thermoflow import Hamiltonian, IncoherentState


def random_probability_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.dirichlet(np.ones(d))


def random_hamiltonian(rng: np.random.Generator, d: int, degenerate: bool = False,
                       with_multiplicities: bool = False) -> Hamiltonian:
    if degenerate:
        energy = float(rng.uniform(0.0, 2.0))
        return Hamiltonian.of([energy] * d)
    energies = np.sort(rng.uniform(0.0, 3.0, size=d))
    if with_multiplicities:
        mults = rng.integers(1, 4, size=d).tolist()
        return Hamiltonian.of(energies, mults)
    return Hamiltonian.of(energies)


def random_state(rng: np.random.Generator, hamiltonian: Hamiltonian) -> IncoherentState:
    weights = rng.dirichlet(np.ones(hamiltonian.num_atoms))
    probs = tuple(float(w / m) for w, m in zip(weights, hamiltonian.multiplicities))
    return IncoherentState(probs, hamiltonian)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
