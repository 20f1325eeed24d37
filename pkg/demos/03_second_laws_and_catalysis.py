"""The family of second laws, and what a catalyst buys.

With a catalyst that must come back unchanged, single-shot curve
dominance relaxes to a one-parameter family of inequalities: the Renyi
divergence to the thermal state may never increase, at any order.  The
four-level pair below is the classic case where the curves say no but
every divergence says yes, and an explicit qubit catalyst closes the gap.
"""

import numpy as np

from thermoflow import (
    Hamiltonian,
    IncoherentState,
    catalyst_search,
    check_cto_transition,
    check_cto_with_ancilla,
    check_thermal_transition,
    divergence_profile,
    free_energy_alpha,
    gibbs,
    tensor,
)

beta = 1.0
flat = Hamiltonian.of([0.0, 0.0, 0.0, 0.0])
rho = IncoherentState((0.5, 0.25, 0.25, 0.0), flat)
rho_prime = IncoherentState((0.4, 0.4, 0.1, 0.1), flat)
tau = gibbs(flat, beta)

print("single-shot curve test:", check_thermal_transition(rho, rho_prime, beta).feasible)
print("second-laws test      :", check_cto_transition(rho, rho_prime, beta).feasible)
print()

# The divergence profiles show the margin at every order.
profile_initial = divergence_profile(rho.probability_array(), tau.probability_array())
profile_target = divergence_profile(rho_prime.probability_array(), tau.probability_array())
print(" order   D(initial)   D(target)   margin")
for (alpha, d_i), (_a, d_t) in zip(profile_initial.grid, profile_target.grid):
    if alpha in (-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 10.0):
        margin = d_i - d_t
        print(f"{alpha:6.1f}   {d_i:9.4f}   {d_t:9.4f}   {margin:+.4f}")
print()

catalyst = catalyst_search(rho, rho_prime, beta)
print("qubit catalyst found:", catalyst.probabilities, "on gaps", catalyst.hamiltonian.energies)
joint = check_thermal_transition(tensor(rho, catalyst), tensor(rho_prime, catalyst), beta)
print("joint curve test with the catalyst attached:", joint.feasible)
print()

# Generalized free energies: the same ordering in energy units.
for alpha in (0.0, 1.0, np.inf):
    fi = free_energy_alpha(rho, beta, alpha).value
    ft = free_energy_alpha(rho_prime, beta, alpha).value
    print(f"F_{alpha:<4} initial {fi:+.4f}  target {ft:+.4f}")
print()

# A borrowed pure ancilla waives the negative orders.  This pair is
# feasible with the ancilla but blocked at negative orders without it.
h3 = Hamiltonian.of((0.72252812, 1.01554447, 1.74267875))
a = IncoherentState((0.37159779, 0.16972502, 1.0 - 0.37159779 - 0.16972502), h3)
b = IncoherentState((0.42264586, 0.54230977, 1.0 - 0.42264586 - 0.54230977), h3)
beta3 = 1.17405888
full = check_cto_transition(a, b, beta3)
print("full second laws:", full.feasible, "- violating order:", full.certificate.alpha)
print("with ancilla    :", check_cto_with_ancilla(a, b, beta3).feasible)
