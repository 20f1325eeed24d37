"""Resource-theoretic thermodynamics for energy-incoherent states.

Majorization and thermo-majorization transition tests, the generalized
second laws over the extended Renyi-order line, single-shot work
quantifiers, smoothed free energies in type-class form, and nanoscale
heat-engine efficiency bounds, each backed by independent brute-force
oracles.
"""

from .states import (
    Hamiltonian,
    IncoherentState,
    gibbs,
    load_state_file,
    mean_energy,
    partition_function,
    renyi_entropy,
    state_from_json_dict,
    state_to_json_dict,
    tensor,
)
from .verdicts import (
    AlphaViolation,
    CurveViolation,
    PrefixViolation,
    TransitionVerdict,
)
from .order import (
    MajorizationCertificate,
    birkhoff_decompose,
    check_noisy_transition,
    construct_bistochastic,
    is_bistochastic,
    is_column_stochastic,
    majorizes,
    permutation_matrix,
)
from .thermo_curve import (
    ThermoCurve,
    beta_order,
    check_thermal_transition,
    curve,
    curve_eval,
    dominates,
)
from .divergence import (
    DEFAULT_ALPHA_GRID,
    DivergenceProfile,
    GeneralizedFreeEnergy,
    check_cto_transition,
    check_cto_with_ancilla,
    divergence_profile,
    free_energy,
    free_energy_alpha,
    iid_extend,
    renyi_divergence,
    renyi_divergence_limit,
    smooth_free_energy,
)
from .work import (
    BatterySpec,
    WorkValue,
    average_work,
    battery_transition_check,
    distillable_work,
    embezzlement_guard,
    work_fixed_output,
    work_of_formation,
)
from .engine import (
    EfficiencyReport,
    EngineSpec,
    QuasiStaticPoint,
    carnot,
    eta_nano,
    near_perfect_ratio,
    omega,
    quasi_static_estimate,
)
from .oracle import (
    SeededSampler,
    catalyst_search,
    feasibility_lp,
    sample_bistochastic,
    sample_gibbs_stochastic,
)

__version__ = "0.1.0"

__all__ = [
    "Hamiltonian",
    "IncoherentState",
    "gibbs",
    "load_state_file",
    "mean_energy",
    "partition_function",
    "renyi_entropy",
    "state_from_json_dict",
    "state_to_json_dict",
    "tensor",
    "AlphaViolation",
    "CurveViolation",
    "PrefixViolation",
    "TransitionVerdict",
    "MajorizationCertificate",
    "birkhoff_decompose",
    "check_noisy_transition",
    "construct_bistochastic",
    "is_bistochastic",
    "is_column_stochastic",
    "majorizes",
    "permutation_matrix",
    "ThermoCurve",
    "beta_order",
    "check_thermal_transition",
    "curve",
    "curve_eval",
    "dominates",
    "DEFAULT_ALPHA_GRID",
    "DivergenceProfile",
    "GeneralizedFreeEnergy",
    "check_cto_transition",
    "check_cto_with_ancilla",
    "divergence_profile",
    "free_energy",
    "free_energy_alpha",
    "iid_extend",
    "renyi_divergence",
    "renyi_divergence_limit",
    "smooth_free_energy",
    "BatterySpec",
    "WorkValue",
    "average_work",
    "battery_transition_check",
    "distillable_work",
    "embezzlement_guard",
    "work_fixed_output",
    "work_of_formation",
    "EfficiencyReport",
    "EngineSpec",
    "QuasiStaticPoint",
    "carnot",
    "eta_nano",
    "near_perfect_ratio",
    "omega",
    "quasi_static_estimate",
    "SeededSampler",
    "catalyst_search",
    "feasibility_lp",
    "sample_bistochastic",
    "sample_gibbs_stochastic",
]
