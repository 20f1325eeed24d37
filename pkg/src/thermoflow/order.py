"""Majorization preorder and explicit bistochastic constructions.

``majorizes`` decides dominance of sorted prefix sums; the constructive
side realizes a majorizing pair as a chain of two-coordinate averaging
maps (T-transforms) and decomposes any bistochastic matrix into a convex
mixture of permutations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import IncoherentState
from .verdicts import PrefixViolation, TransitionVerdict

__all__ = [
    "MajorizationCertificate",
    "majorizes",
    "check_noisy_transition",
    "construct_bistochastic",
    "birkhoff_decompose",
    "permutation_matrix",
    "is_column_stochastic",
    "is_bistochastic",
]

_STOCHASTIC_TOL = 1e-12


def _as_prob_vector(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-d vector")
    if np.any(arr < -_STOCHASTIC_TOL):
        raise ValueError(f"{name} has negative entries")
    if abs(arr.sum() - 1.0) > 1e-9:
        raise ValueError(f"{name} is not normalized (sum {arr.sum()!r})")
    return np.clip(arr, 0.0, None)


def is_column_stochastic(matrix: np.ndarray, tol: float = _STOCHASTIC_TOL) -> bool:
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.all(a >= -tol) and np.allclose(a.sum(axis=0), 1.0, atol=tol, rtol=0.0))


def is_bistochastic(matrix: np.ndarray, tol: float = _STOCHASTIC_TOL) -> bool:
    a = np.asarray(matrix, dtype=float)
    return is_column_stochastic(a, tol) and bool(np.allclose(a.sum(axis=1), 1.0, atol=tol, rtol=0.0))


@dataclass(frozen=True)
class MajorizationCertificate:
    """Outcome of a prefix-sum dominance check.

    When ``majorizes`` is False, ``witness_prefix`` is the 1-based prefix
    length ``k`` with the largest deficit
    ``sum_{i<=k} p_sorted[i] < sum_{i<=k} q_sorted[i]``.
    """

    majorizes: bool
    witness_prefix: int | None = None
    initial_sum: float | None = None
    target_sum: float | None = None

    def __bool__(self) -> bool:
        return self.majorizes


def majorizes(p, q, tol: float = 1e-12) -> MajorizationCertificate:
    """Decide whether ``p`` majorizes ``q``.

    Vectors of unequal length are zero-padded to the common dimension.
    Dominance is required at every prefix within ``tol``.
    """
    p = _as_prob_vector(p, "p")
    q = _as_prob_vector(q, "q")
    d = max(p.size, q.size)
    p = np.pad(p, (0, d - p.size))
    q = np.pad(q, (0, d - q.size))
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    deficit = cq - cp
    k = int(np.argmax(deficit))
    if deficit[k] > tol:
        return MajorizationCertificate(False, k + 1, float(cp[k]), float(cq[k]))
    return MajorizationCertificate(True)


def check_noisy_transition(rho: IncoherentState, rho_prime: IncoherentState) -> TransitionVerdict:
    """Feasibility of ``rho -> rho_prime`` when only entropy can change.

    Both states must live on fully degenerate Hamiltonians with one shared
    energy value; the verdict is eigenvalue majorization.  Non-degenerate
    spectra are rejected: use the thermal check instead.
    """
    for name, state in (("initial", rho), ("target", rho_prime)):
        if not state.hamiltonian.is_fully_degenerate():
            raise ValueError(f"{name} state has a non-degenerate Hamiltonian; use the thermal check")
    if rho.hamiltonian.energies[0] != rho_prime.hamiltonian.energies[0]:
        raise ValueError("degenerate energy levels must agree between the two states")
    cert = majorizes(rho.expanded_probabilities(), rho_prime.expanded_probabilities())
    if cert.majorizes:
        return TransitionVerdict(True)
    return TransitionVerdict(
        False,
        PrefixViolation(cert.witness_prefix, cert.initial_sum, cert.target_sum),
    )


def _sorting_permutation_matrix(v: np.ndarray) -> np.ndarray:
    """Matrix ``P`` with ``P @ v`` sorted descending (stable over ties)."""
    order = np.argsort(-v, kind="stable")
    d = v.size
    p = np.zeros((d, d))
    p[np.arange(d), order] = 1.0
    return p


def construct_bistochastic(p, q, tol: float = 1e-12) -> np.ndarray:
    """Bistochastic ``A`` with ``A @ p == q``, built from T-transforms.

    Requires ``p`` to majorize ``q``; raises with the violated prefix
    otherwise.  The chain uses at most ``d - 1`` two-coordinate averaging
    maps, wrapped in the sorting permutations of ``p`` and ``q``.
    """
    p = _as_prob_vector(p, "p")
    q = _as_prob_vector(q, "q")
    d = max(p.size, q.size)
    p = np.pad(p, (0, d - p.size))
    q = np.pad(q, (0, d - q.size))
    cert = majorizes(p, q)
    if not cert.majorizes:
        raise ValueError(
            "p does not majorize q: prefix "
            f"{cert.witness_prefix} sums to {cert.initial_sum!r} < {cert.target_sum!r}"
        )

    sort_p = _sorting_permutation_matrix(p)
    sort_q = _sorting_permutation_matrix(q)
    x = sort_p @ p
    y = sort_q @ q

    chain = np.eye(d)
    for _ in range(d - 1):
        diff = x - y
        below = np.nonzero(diff < -tol)[0]
        if below.size == 0:
            break
        k = int(below[0])
        above = np.nonzero(diff[:k] > tol)[0]
        if above.size == 0:
            break
        j = int(above[-1])
        delta = min(diff[j], -diff[k])
        lam = 1.0 - delta / (x[j] - x[k])
        t = np.eye(d)
        t[j, j] = t[k, k] = lam
        t[j, k] = t[k, j] = 1.0 - lam
        x = t @ x
        chain = t @ chain

    return sort_q.T @ chain @ sort_p


def permutation_matrix(perm) -> np.ndarray:
    """Matrix ``P`` with ``(P @ x)[i] == x[perm[i]]``."""
    perm = np.asarray(perm, dtype=int)
    d = perm.size
    p = np.zeros((d, d))
    p[np.arange(d), perm] = 1.0
    return p


def _matching_through(support: np.ndarray, forced_row: int, forced_col: int) -> np.ndarray | None:
    """Perfect matching on the support graph that uses (forced_row, forced_col).

    Returns ``perm`` with ``perm[row] = col`` or None.  Plain augmenting-path
    search; dimensions here are small.
    """
    d = support.shape[0]
    match_of_col = np.full(d, -1)
    match_of_col[forced_col] = forced_row

    def augment(row: int, seen: np.ndarray) -> bool:
        for col in range(d):
            if support[row, col] and not seen[col] and col != forced_col:
                seen[col] = True
                if match_of_col[col] < 0 or augment(match_of_col[col], seen):
                    match_of_col[col] = row
                    return True
        return False

    for row in range(d):
        if row == forced_row:
            continue
        if not augment(row, np.zeros(d, dtype=bool)):
            return None
    perm = np.empty(d, dtype=int)
    for col, row in enumerate(match_of_col):
        perm[row] = col
    return perm


def _caratheodory_reduce(weights: list[float], perms: list[np.ndarray], target: int) -> tuple[list[float], list[np.ndarray]]:
    """Shrink a convex combination of permutation matrices to ``target`` terms.

    Works by repeatedly finding an affine dependency among the vectorized
    permutation matrices and sliding the weights until one vanishes; the
    weighted sum is unchanged.
    """
    weights = list(weights)
    perms = list(perms)
    while len(weights) > target:
        mats = np.stack([permutation_matrix(s).ravel() for s in perms], axis=1)
        rows = np.vstack([mats, np.ones(len(perms))])
        _, s, vh = np.linalg.svd(rows)
        if s[-1] > 1e-10:
            break
        c = vh[-1]
        positive = c > 1e-14
        if not positive.any():
            c = -c
            positive = c > 1e-14
        theta = min(w / ci for w, ci in zip(weights, c) if ci > 1e-14)
        weights = [w - theta * ci for w, ci in zip(weights, c)]
        keep = [i for i, w in enumerate(weights) if w > 1e-14]
        weights = [weights[i] for i in keep]
        perms = [perms[i] for i in keep]
    total = sum(weights)
    return [w / total for w in weights], perms


def birkhoff_decompose(matrix, tol: float = 1e-9) -> list[tuple[float, np.ndarray]]:
    """Convex decomposition of a bistochastic matrix into permutations.

    Greedily extracts the permutation through the current minimum positive
    entry (ties: lowest row, then lowest column), so runs are reproducible.
    At most ``(d-1)**2 + 1`` terms are returned; the weighted permutation
    matrices re-sum to the input within ``tol``.
    """
    a = np.array(matrix, dtype=float)
    if not is_bistochastic(a):
        raise ValueError("input matrix is not bistochastic")
    d = a.shape[0]
    support_tol = 1e-13

    weights: list[float] = []
    perms: list[np.ndarray] = []
    remaining = a.copy()
    for _ in range(d * d):
        mass = remaining.sum(axis=1).max()
        if mass <= 1e-12:
            break
        support = remaining > support_tol
        positive = np.where(support, remaining, np.inf)
        flat = int(np.argmin(positive))
        row, col = divmod(flat, d)
        perm = _matching_through(support, row, col)
        if perm is None:
            # numerically frayed support; retry on anything positive
            support = remaining > 0
            perm = _matching_through(support, row, col)
            if perm is None:
                raise ArithmeticError("no permutation found in the remaining support")
        w = float(remaining[np.arange(d), perm].min())
        weights.append(w)
        perms.append(perm)
        remaining[np.arange(d), perm] -= w
        np.clip(remaining, 0.0, None, out=remaining)

    total = sum(weights)
    weights = [w / total for w in weights]
    bound = (d - 1) ** 2 + 1
    if len(weights) > bound:
        weights, perms = _caratheodory_reduce(weights, perms, bound)
    return list(zip(weights, perms))
