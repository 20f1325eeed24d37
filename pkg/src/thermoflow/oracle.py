"""Independent brute-force verification machinery.

Everything here is deliberately decoupled from the main decision paths:
the linear-feasibility test runs its own dense phase-1 simplex instead of
reusing curve comparisons, and the samplers build random stochastic maps
whose defining fixed points hold exactly by construction.  Property tests
and the acceptance suite lean on these as the second route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import Hamiltonian, IncoherentState, tensor
from .thermo_curve import check_thermal_transition

__all__ = [
    "SeededSampler",
    "sample_bistochastic",
    "sample_gibbs_stochastic",
    "feasibility_lp",
    "catalyst_search",
]

LP_TOL = 1e-8


@dataclass(frozen=True)
class SeededSampler:
    """Value-typed randomness source: same (seed, stream) means same draws.

    Every call to :meth:`generator` returns a fresh generator at the start
    of the stream, so sampling functions taking a sampler are pure.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        root = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.default_rng(root)

    def with_stream(self, stream: int) -> "SeededSampler":
        return SeededSampler(self.seed, stream)


def sample_bistochastic(d: int, sampler: SeededSampler) -> np.ndarray:
    """Random convex mixture of at most ``3 d`` permutations."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = sampler.generator()
    k = int(rng.integers(1, 3 * d + 1))
    weights = rng.dirichlet(np.ones(k))
    a = np.zeros((d, d))
    for w in weights:
        perm = rng.permutation(d)
        a[np.arange(d), perm] += w
    return a


def sample_gibbs_stochastic(q, sampler: SeededSampler, steps: int) -> np.ndarray:
    """Random column-stochastic matrix fixing ``q`` exactly.

    Composes ``steps`` two-level partial swaps.  On a pair ``(i, j)`` the
    one-parameter family ``[[1-a, b], [a, 1-b]]`` with ``b = a q_i / q_j``
    is exactly the set of 2x2 stochastic maps preserving ``(q_i, q_j)``;
    the mixing parameter is drawn uniformly up to the boundary of validity.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise ValueError("q must be a nonempty vector")
    if np.any(q <= 0.0):
        raise ValueError("q must be strictly positive")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    d = q.size
    g = np.eye(d)
    if d == 1:
        return g
    rng = sampler.generator()
    for _ in range(steps):
        i, j = rng.choice(d, size=2, replace=False)
        a_max = min(1.0, q[j] / q[i])
        a = rng.uniform(0.0, a_max)
        b = a * q[i] / q[j]
        step = np.eye(d)
        step[i, i] = 1.0 - a
        step[j, i] = a
        step[i, j] = b
        step[j, j] = 1.0 - b
        g = step @ g
    return g


def _phase_one_simplex(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray | None:
    """Find ``x >= 0`` with ``A x = b`` via phase-1 simplex, Bland's rule.

    Returns the solution vector or None when the artificial objective
    cannot be driven to zero.
    """
    m, n = a.shape
    a = a.copy()
    b = b.copy()
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0

    tableau = np.hstack([a, np.eye(m), b.reshape(-1, 1)])
    basis = list(range(n, n + m))
    cost = np.concatenate([np.zeros(n), np.ones(m)])

    for _ in range(20000):
        cb = cost[basis]
        reduced = cost[: n + m] - cb @ tableau[:, : n + m]
        entering = -1
        for j in range(n + m):
            if reduced[j] < -1e-9:
                entering = j
                break
        if entering < 0:
            break
        col = tableau[:, entering]
        best_ratio = math.inf
        leaving = -1
        for i in range(m):
            if col[i] > 1e-9:
                ratio = tableau[i, -1] / col[i]
                if ratio < best_ratio - 1e-12 or (
                    abs(ratio - best_ratio) <= 1e-12
                    and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return None  # unbounded: cannot happen for the phase-1 objective
        pivot = tableau[leaving, entering]
        tableau[leaving] /= pivot
        for i in range(m):
            if i != leaving and tableau[i, entering] != 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leaving]
        basis[leaving] = entering
    else:
        raise ArithmeticError("simplex iteration cap hit; input too degenerate")

    objective = float(cost[basis] @ tableau[:, -1])
    if objective > tol:
        return None
    x = np.zeros(n + m)
    for i, var in enumerate(basis):
        x[var] = tableau[i, -1]
    return x[:n]


def feasibility_lp(p, q, p_target, tol: float = LP_TOL) -> tuple[bool, np.ndarray | None]:
    """Does a column-stochastic ``G`` with ``G q = q`` and ``G p = p_target`` exist?

    Decided by an internally implemented dense phase-1 simplex (Bland's
    rule, tolerance ``tol``); a witness matrix is returned when feasible.
    This is the independent oracle for the curve-dominance decision.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p_target = np.asarray(p_target, dtype=float)
    if not (p.shape == q.shape == p_target.shape) or p.ndim != 1:
        raise ValueError("p, q and p_target must be vectors of one dimension")
    if np.any(~np.isfinite(p)) or np.any(~np.isfinite(q)) or np.any(~np.isfinite(p_target)):
        raise ValueError("inputs must be finite")
    d = p.size

    rows: list[np.ndarray] = []
    rhs: list[float] = []
    for j in range(d):
        row = np.zeros(d * d)
        row[j::d] = 1.0
        rows.append(row)
        rhs.append(1.0)
    for i in range(d):
        row = np.zeros(d * d)
        row[i * d : (i + 1) * d] = q
        rows.append(row)
        rhs.append(q[i])
    for i in range(d):
        row = np.zeros(d * d)
        row[i * d : (i + 1) * d] = p
        rows.append(row)
        rhs.append(p_target[i])

    x = _phase_one_simplex(np.vstack(rows), np.asarray(rhs), tol)
    if x is None:
        return False, None
    g = x.reshape(d, d)
    return True, g


def catalyst_search(
    rho: IncoherentState,
    rho_prime: IncoherentState,
    beta: float,
    d_c: int = 2,
    resolution: int = 40,
    gap_max: float | None = None,
) -> IncoherentState | None:
    """Grid search for a qubit catalyst enabling ``rho -> rho_prime``.

    Scans catalyst gaps ``g`` ascending over ``[0, gap_max]`` and ground
    weights ``r`` descending from 1 in steps of ``1/resolution``, returning
    the first catalyst ``(r, 1-r)`` on levels ``{0, g}`` for which the
    joint curve test passes.  The scan starts at the trivial catalyst
    ``(r=1, g=0)``, so plain feasible transitions return immediately.
    """
    if d_c != 2:
        raise ValueError("only two-level catalysts are searched")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if gap_max is None:
        energies = rho.hamiltonian.energies + rho_prime.hamiltonian.energies
        gap_max = (max(energies) - min(energies)) + 1.0 / beta
    r_values = [1.0 - k / resolution for k in range(resolution)]
    g_values = [gap_max * k / (resolution - 1) for k in range(resolution)]
    for g in g_values:
        h_c = Hamiltonian.of([0.0, g])
        for r in r_values:
            catalyst = IncoherentState((r, 1.0 - r), h_c)
            joint_initial = tensor(rho, catalyst)
            joint_final = tensor(rho_prime, catalyst)
            if check_thermal_transition(joint_initial, joint_final, beta).feasible:
                return catalyst
    return None
