"""Beta-ordering, thermo-majorization curves and the thermal transition test.

The curve of a state-Hamiltonian pair is the concave piecewise-linear
envelope obtained by laying out one segment per atom, width
``m * exp(-beta * E)`` and height ``m * p``, with atoms sorted by the
score ``p * exp(beta * E)`` in non-increasing order.  A transition between
block-diagonal pairs is feasible exactly when the initial curve lies
nowhere below the target curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import IncoherentState, _check_beta
from .verdicts import CurveViolation, TransitionVerdict

__all__ = [
    "ThermoCurve",
    "beta_order",
    "curve",
    "curve_eval",
    "dominates",
    "check_thermal_transition",
]

DOMINANCE_TOL = 1e-12

# A middle vertex closer than this (vertically) to the chord of its
# neighbours is dropped as collinear.
_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class ThermoCurve:
    """Concave piecewise-linear curve through ``vertices``; constant 1 afterwards."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        v = self.vertices
        if len(v) < 2:
            raise ValueError("curve needs at least two vertices")
        if v[0] != (0.0, 0.0):
            raise ValueError("curve must start at (0, 0)")
        xs = np.array([p[0] for p in v])
        ys = np.array([p[1] for p in v])
        if np.any(np.diff(xs) <= 0):
            raise ValueError("x coordinates must be strictly increasing")
        if np.any(np.diff(ys) < -1e-15):
            raise ValueError("y coordinates must be non-decreasing")
        if abs(ys[-1] - 1.0) > 1e-12:
            raise ValueError("curve must saturate at height 1")
        slopes = np.diff(ys) / np.diff(xs)
        if np.any(np.diff(slopes) > 1e-9 * np.maximum(1.0, slopes[:-1])):
            raise ValueError("slopes must be non-increasing (concavity)")

    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.vertices])

    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.vertices])

    @property
    def right_endpoint(self) -> tuple[float, float]:
        return self.vertices[-1]


def beta_order(state: IncoherentState, beta: float) -> tuple[int, ...]:
    """Atom permutation sorting scores ``p * exp(beta E)`` non-increasingly.

    Ties break by energy ascending, then by original index, so the result
    is deterministic; a Gibbs state listed in ascending energy order keeps
    its index order.
    """
    beta = _check_beta(beta)
    scored = [
        (-(p * math.exp(beta * e)), e, i)
        for i, (p, e, _m) in enumerate(state.atoms)
    ]
    scored.sort()
    return tuple(i for _neg, _e, i in scored)


def curve(state: IncoherentState, beta: float) -> ThermoCurve:
    """Thermo-majorization curve of ``(state, state.hamiltonian)`` at ``beta``.

    Consecutive collinear vertices are merged, so a Gibbs state yields the
    bare two-vertex line from (0, 0) to (Z, 1).
    """
    beta = _check_beta(beta)
    order = beta_order(state, beta)
    atoms = state.atoms
    x = 0.0
    y = 0.0
    vertices: list[tuple[float, float]] = [(0.0, 0.0)]
    for i in order:
        p, e, m = atoms[i]
        x += m * math.exp(-beta * e)
        y += m * p
        vertices.append((x, y))

    merged: list[tuple[float, float]] = [vertices[0]]
    for vx, vy in vertices[1:]:
        while len(merged) >= 2:
            (x0, y0), (x1, y1) = merged[-2], merged[-1]
            chord = y0 + (vy - y0) * (x1 - x0) / (vx - x0)
            if abs(y1 - chord) <= _MERGE_TOL:
                merged.pop()
            else:
                break
        merged.append((vx, vy))
    return ThermoCurve(tuple(merged))


def curve_eval(c: ThermoCurve, x) -> float | np.ndarray:
    """Value of the curve at ``x >= 0``; constant 1 beyond the last vertex."""
    xq = np.asarray(x, dtype=float)
    if np.any(xq < 0):
        raise ValueError("curve is defined on x >= 0")
    out = np.interp(xq, c.xs(), c.ys())
    return float(out) if np.isscalar(x) or xq.ndim == 0 else out


def dominates(a: ThermoCurve, b: ThermoCurve, tol: float = DOMINANCE_TOL) -> TransitionVerdict:
    """Whether curve ``a`` lies above curve ``b`` everywhere.

    Both curves are piecewise linear and constant beyond their right
    endpoints, so checking the union of breakpoints is exact.  The
    certificate carries the maximally violating breakpoint.
    """
    grid = np.union1d(a.xs(), b.xs())
    va = curve_eval(a, grid)
    vb = curve_eval(b, grid)
    gap = vb - va
    worst = int(np.argmax(gap))
    if gap[worst] > tol:
        return TransitionVerdict(
            False,
            CurveViolation(float(grid[worst]), float(va[worst]), float(vb[worst])),
        )
    return TransitionVerdict(True)


def check_thermal_transition(
    rho: IncoherentState, rho_prime: IncoherentState, beta: float
) -> TransitionVerdict:
    """Single-shot feasibility of ``rho -> rho_prime`` against a ``beta`` bath.

    The two states may live on different Hamiltonians; each contributes its
    own curve and dominance is compared on the union of breakpoints.
    """
    return dominates(curve(rho, beta), curve(rho_prime, beta))
