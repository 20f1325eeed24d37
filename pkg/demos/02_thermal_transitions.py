"""Thermo-majorization curves decide single-shot thermal reachability.

Against a heat bath at inverse temperature beta, a block-diagonal state
can reach another exactly when its curve lies nowhere below the target's.
The Gibbs state draws a straight line from (0, 0) to (Z, 1) and sits at
the bottom of the order; every excursion above that line is a resource.
"""

import math

import numpy as np

from thermoflow import (
    Hamiltonian,
    IncoherentState,
    check_noisy_transition,
    check_thermal_transition,
    curve,
    curve_eval,
    gibbs,
    partition_function,
)

beta = 1.0
h = Hamiltonian.of([0.0, math.log(2.0)])

excited = IncoherentState((0.4, 0.6), h)
relaxed = IncoherentState((0.9, 0.1), h)
tau = gibbs(h, beta)

print(f"partition function Z = {partition_function(h, beta)}")
for name, state in [("excited", excited), ("relaxed", relaxed), ("gibbs", tau)]:
    vertices = curve(state, beta).vertices
    pretty = ", ".join(f"({x:.3f}, {y:.3f})" for x, y in vertices)
    print(f"curve[{name}]  {pretty}")
print()

# Sampling the curves on a shared grid makes the ordering visible.
grid = np.linspace(0.0, partition_function(h, beta), 7)
for name, state in [("excited", excited), ("relaxed", relaxed), ("gibbs", tau)]:
    values = " ".join(f"{curve_eval(curve(state, beta), x):.3f}" for x in grid)
    print(f"{name:8s} {values}")
print()

print("excited -> gibbs  ?", check_thermal_transition(excited, tau, beta).feasible)
print("excited -> relaxed?", check_thermal_transition(excited, relaxed, beta).feasible)
verdict = check_thermal_transition(excited, relaxed, beta)
cert = verdict.certificate
print(
    f"  blocked at x = {cert.x:.3f}: initial curve {cert.initial_value:.3f} "
    f"< target curve {cert.target_value:.3f}"
)
print("relaxed -> gibbs  ?", check_thermal_transition(relaxed, tau, beta).feasible)
print()

# A flat spectrum collapses the whole story to plain majorization.
flat = Hamiltonian.of([0.0, 0.0, 0.0])
a = IncoherentState((0.6, 0.3, 0.1), flat)
b = IncoherentState((0.4, 0.35, 0.25), flat)
print("flat spectrum: thermal says", check_thermal_transition(a, b, beta).feasible)
print("flat spectrum: eigenvalue majorization says", check_noisy_transition(a, b).feasible)

# Changing the Hamiltonian mid-transition is allowed by the comparison:
lifted = Hamiltonian.of([1.0, 1.0 + math.log(2.0)])
lifted_state = IncoherentState(tau.probabilities, lifted)
print()
print("lift every level by 1 (costs work):",
      check_thermal_transition(tau, lifted_state, beta).feasible)
print("drop every level by 1 (dissipates):",
      check_thermal_transition(lifted_state, tau, beta).feasible)
