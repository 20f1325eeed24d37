"""Many copies wash the family of second laws down to one number.

Exact transformations of n independent copies obey the same one-shot
laws (the divergences are additive), but allowing a vanishing error and
letting n grow collapses the order-0 and order-infinity free energies
onto the standard free energy.  Type classes keep the n-copy states
polynomial-sized, so the convergence is cheap to watch.
"""

import math

from thermoflow import (
    IncoherentState,
    free_energy,
    free_energy_alpha,
    iid_extend,
    renyi_entropy,
    smooth_free_energy,
)

base = IncoherentState.from_vector([0.3, 0.7])
beta = 1.0
f_std = free_energy(base, beta)
print(f"standard free energy per copy: {f_std:.6f}")
print()

# Type classes: 2^n eigenvalues in n+1 atoms.
for n in (5, 20):
    extended = iid_extend(base, n)
    total_copies = sum(m for _p, _e, m in extended.atoms)
    print(f"n={n:2d}: {len(extended.atoms)} atoms stand for {total_copies} eigenvalues")
print()

# Exactness first: without smoothing nothing moves per copy.
for n in (1, 10):
    extended = iid_extend(base, n)
    f0 = free_energy_alpha(extended, beta, 0.0).value / n
    finf = free_energy_alpha(extended, beta, math.inf).value / n
    print(f"n={n:2d}: F0/n = {f0:.6f}, Finf/n = {finf:.6f}  (gap stays open)")
print()

# A one-percent smoothing ball lets the typical set take over.
eps = 0.01
print(f"smoothing with eps = {eps}:")
print(" n    F0eps/n     gap0      Finfeps/n   gapinf")
for n in (5, 10, 20):
    extended = iid_extend(base, n)
    f0 = smooth_free_energy(extended, beta, 0.0, eps) / n
    finf = smooth_free_energy(extended, beta, math.inf, eps) / n
    print(
        f"{n:2d}   {f0:.6f}  {abs(f0 - f_std):.6f}   {finf:.6f}  {abs(finf - f_std):.6f}"
    )
print()
print("both columns drift toward the standard free energy: in the limit of")
print("many copies and vanishing error, one number rules the transitions.")
print()

# Entropy stays exactly additive in the type-class representation.
n = 20
extended = iid_extend(base, n)
print(f"entropy additivity at n={n}: "
      f"{renyi_entropy(extended, 1.0):.9f} vs {n * renyi_entropy(base, 1.0):.9f}")
