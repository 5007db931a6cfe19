"""Quantum speed limits and passivization times under bounded bandwidth."""

from ._core import (
    SystemSpec,
    Permutation,
    ValidationError,
    expm_skew,
    principal_log,
    hs_norm,
    geodesic_distance,
    bandwidth,
    von_neumann_evolve,
    min_expectation,
    discrepancy,
    is_passive,
    canonical_passivizing_permutation,
    enumerate_passivizing_permutations,
    permutation_operator,
    cycle_decomposition,
    tau_qsl,
    tau_pas_nondegenerate,
    tau_upper_from_permutation,
    compute_bounds,
    build_time_optimal_hamiltonian,
    distance_to_passivizing_set,
    delta_n,
    delta_n_closed,
    tau_cqsl,
    advantage_ratio,
    assisted_bounds,
    collective_hamiltonian,
    ergotropy,
    energy_transfer_variance,
    numeric_min_distance,
)

__all__ = [
    "SystemSpec",
    "Permutation",
    "ValidationError",
    "expm_skew",
    "principal_log",
    "hs_norm",
    "geodesic_distance",
    "bandwidth",
    "von_neumann_evolve",
    "min_expectation",
    "discrepancy",
    "is_passive",
    "canonical_passivizing_permutation",
    "enumerate_passivizing_permutations",
    "permutation_operator",
    "cycle_decomposition",
    "tau_qsl",
    "tau_pas_nondegenerate",
    "tau_upper_from_permutation",
    "compute_bounds",
    "build_time_optimal_hamiltonian",
    "distance_to_passivizing_set",
    "delta_n",
    "delta_n_closed",
    "tau_cqsl",
    "advantage_ratio",
    "assisted_bounds",
    "collective_hamiltonian",
    "ergotropy",
    "energy_transfer_variance",
    "numeric_min_distance",
]
