import math

import numpy as np
import pytest

from thermoflow import (
    Hamiltonian,
    IncoherentState,
    SeededSampler,
    birkhoff_decompose,
    check_noisy_transition,
    construct_bistochastic,
    feasibility_lp,
    is_bistochastic,
    majorizes,
    permutation_matrix,
    renyi_entropy,
    sample_bistochastic,
)
from thermoflow.verdicts import PrefixViolation

from conftest import random_probability_vector


class TestMajorizes:
    def test_pure_majorizes_everything(self):
        assert majorizes([1.0, 0.0], [0.5, 0.5]).majorizes

    def test_uniform_is_bottom(self):
        cert = majorizes([0.5, 0.5], [1.0, 0.0])
        assert not cert.majorizes
        assert cert.witness_prefix == 1
        assert cert.initial_sum == pytest.approx(0.5)
        assert cert.target_sum == pytest.approx(1.0)

    def test_zero_padding_of_unequal_lengths(self):
        assert majorizes([0.6, 0.4], [0.5, 0.3, 0.2]).majorizes

    def test_witness_reproduces_prefix_sums(self, rng):
        for _ in range(200):
            p = random_probability_vector(rng, int(rng.integers(2, 8)))
            q = random_probability_vector(rng, int(rng.integers(2, 8)))
            cert = majorizes(p, q)
            if cert.majorizes:
                continue
            k = cert.witness_prefix
            d = max(p.size, q.size)
            ps = np.sort(np.pad(p, (0, d - p.size)))[::-1]
            qs = np.sort(np.pad(q, (0, d - q.size)))[::-1]
            assert ps[:k].sum() == pytest.approx(cert.initial_sum)
            assert qs[:k].sum() == pytest.approx(cert.target_sum)
            assert ps[:k].sum() < qs[:k].sum()

    def test_reflexive_and_transitive(self, rng):
        for trial in range(1000):
            d = int(rng.integers(2, 9))
            p = random_probability_vector(rng, d)
            assert majorizes(p, p).majorizes
            a = sample_bistochastic(d, SeededSampler(31, 2 * trial))
            b = sample_bistochastic(d, SeededSampler(31, 2 * trial + 1))
            q = a @ p
            r = b @ q
            assert majorizes(p, q).majorizes
            assert majorizes(q, r).majorizes
            assert majorizes(p, r).majorizes

    def test_schur_concavity(self, rng):
        for trial in range(300):
            d = int(rng.integers(2, 7))
            p = random_probability_vector(rng, d)
            q = sample_bistochastic(d, SeededSampler(77, trial)) @ p
            for alpha in (0.0, 0.5, 1.0, 2.0, math.inf):
                assert renyi_entropy(p, alpha) <= renyi_entropy(q, alpha) + 1e-10


class TestCheckNoisyTransition:
    def test_reflexive(self):
        state = IncoherentState.from_vector([0.5, 0.3, 0.2])
        assert check_noisy_transition(state, state).feasible

    def test_pure_to_mixed(self):
        a = IncoherentState.from_vector([1.0, 0.0])
        b = IncoherentState.from_vector([0.7, 0.3])
        assert check_noisy_transition(a, b).feasible

    def test_sharpening_is_infeasible(self):
        a = IncoherentState.from_vector([0.6, 0.4])
        b = IncoherentState.from_vector([0.8, 0.2])
        verdict = check_noisy_transition(a, b)
        assert not verdict.feasible
        assert isinstance(verdict.certificate, PrefixViolation)
        assert verdict.certificate.prefix == 1
        assert verdict.certificate.initial_sum == pytest.approx(0.6)
        assert verdict.certificate.target_sum == pytest.approx(0.8)

    def test_rejects_nondegenerate_hamiltonians(self):
        h = Hamiltonian.of([0.0, 1.0])
        state = IncoherentState((0.6, 0.4), h)
        with pytest.raises(ValueError):
            check_noisy_transition(state, state)

    def test_multiplicities_expand(self):
        h = Hamiltonian.of([0.0], [4])
        uniform = IncoherentState((0.25,), h)
        spiky = IncoherentState.from_vector([0.7, 0.1, 0.1, 0.1])
        assert check_noisy_transition(spiky, uniform).feasible
        assert not check_noisy_transition(uniform, spiky).feasible


class TestConstructBistochastic:
    def test_identity_for_equal_vectors(self):
        a = construct_bistochastic([0.5, 0.3, 0.2], [0.5, 0.3, 0.2])
        assert np.allclose(a, np.eye(3), atol=1e-12)

    def test_single_t_transform(self):
        a = construct_bistochastic([0.7, 0.3], [0.6, 0.4])
        assert np.allclose(a, [[0.75, 0.25], [0.25, 0.75]], atol=1e-12)

    def test_pure_to_uniform(self):
        p = np.array([1.0, 0.0, 0.0])
        q = np.full(3, 1.0 / 3.0)
        a = construct_bistochastic(p, q)
        assert is_bistochastic(a)
        assert np.max(np.abs(a @ p - q)) <= 1e-9

    def test_precondition_failure_raises_with_prefix(self):
        with pytest.raises(ValueError, match="prefix"):
            construct_bistochastic([0.5, 0.5], [0.9, 0.1])

    def test_random_majorizing_pairs(self, rng):
        for trial in range(500):
            d = int(rng.integers(2, 9))
            p = random_probability_vector(rng, d)
            q = sample_bistochastic(d, SeededSampler(5150, trial)) @ p
            a = construct_bistochastic(p, q)
            assert is_bistochastic(a)
            assert np.max(np.abs(a @ p - q)) <= 1e-9


class TestBirkhoffDecompose:
    def test_permutation_is_single_term(self):
        perm = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
        terms = birkhoff_decompose(perm)
        assert len(terms) == 1
        weight, sigma = terms[0]
        assert weight == pytest.approx(1.0)
        assert np.allclose(permutation_matrix(sigma), perm)

    def test_even_two_by_two_mixture(self):
        a = np.full((2, 2), 0.5)
        terms = birkhoff_decompose(a)
        assert len(terms) == 2
        assert sorted(w for w, _ in terms) == pytest.approx([0.5, 0.5])

    def test_rejects_non_bistochastic(self):
        with pytest.raises(ValueError):
            birkhoff_decompose(np.array([[0.9, 0.0], [0.1, 1.0]]))

    def test_random_mixture_round_trip(self, rng):
        for trial in range(100):
            d = 4
            a = sample_bistochastic(d, SeededSampler(999, trial))
            terms = birkhoff_decompose(a)
            resum = sum(w * permutation_matrix(s) for w, s in terms)
            assert np.max(np.abs(resum - a)) <= 1e-9
            assert len(terms) <= (d - 1) ** 2 + 1
            assert all(w >= 0 for w, _ in terms)
            assert sum(w for w, _ in terms) == pytest.approx(1.0, abs=1e-12)


class TestConverseViaLp:
    def test_no_bistochastic_map_when_not_majorizing(self, rng):
        # For uniform fixed point the LP decides bistochastic reachability.
        checked = 0
        trial = 0
        while checked < 1000:
            trial += 1
            d = int(rng.integers(2, 7))
            p = random_probability_vector(rng, d)
            q = random_probability_vector(rng, d)
            if majorizes(p, q).majorizes:
                continue
            uniform = np.full(d, 1.0 / d)
            feasible, _ = feasibility_lp(p, uniform, q)
            assert not feasible
            checked += 1
