"""Entropic uncertainty bounds for complete sets of mutually unbiased bases.

Dense density-matrix numerics, entropy functionals, the reference MUB
tables for d = 2, 3, 4 (plus odd primes), every uncertainty bound of the
multi-memory game, the six reference state families, and a CLI that turns
all of it into CSV/JSON.
"""

from .errors import InvariantViolation, ValidationError
from .qstate import (
    QuantumState,
    SpectralDecomposition,
    hermitian_eig,
    kron,
    partial_trace,
    post_measurement_state,
    read_state_file,
    state_from_dict,
    state_to_dict,
    with_subsystems,
    write_state_file,
)
from .entropy import (
    conditional_entropy,
    holevo_quantity,
    measurement_probs,
    mutual_information,
    purity,
    shannon_entropy,
    von_neumann_entropy,
)
from .mub import (
    MubCheck,
    MubSet,
    OrthonormalBasis,
    mubs_for_dim,
    mubset_from_dict,
    mubset_to_dict,
    pauli_mubs,
    prime_mubs,
    ququart_mubs,
    qutrit_mubs,
    verify_mub,
)
from .scenario import (
    GameScenario,
    Partition,
    RandomStateSpec,
    build_scenario,
    example1_state,
    example2_state,
    example4_w_state,
    example5_ghz_state,
    random_mixed_states,
    random_pure_states,
    random_states,
    scenario_from_state,
    single_memory_partition,
    singleton_partition,
)
from .bounds import (
    BoundReport,
    MeasurementTerm,
    MemoryTerm,
    berta_bound,
    cmub_lower_bound,
    cmub_upper_bound,
    evaluate_all,
    q_mu,
    sanchez_ruiz_lower,
    sanchez_ruiz_upper,
    tripartite_bounds,
    zhang_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "GameScenario",
    "InvariantViolation",
    "MeasurementTerm",
    "MemoryTerm",
    "MubCheck",
    "MubSet",
    "OrthonormalBasis",
    "Partition",
    "QuantumState",
    "RandomStateSpec",
    "SpectralDecomposition",
    "ValidationError",
    "berta_bound",
    "build_scenario",
    "cmub_lower_bound",
    "cmub_upper_bound",
    "conditional_entropy",
    "evaluate_all",
    "example1_state",
    "example2_state",
    "example4_w_state",
    "example5_ghz_state",
    "hermitian_eig",
    "holevo_quantity",
    "kron",
    "measurement_probs",
    "mubs_for_dim",
    "mubset_from_dict",
    "mubset_to_dict",
    "mutual_information",
    "partial_trace",
    "pauli_mubs",
    "post_measurement_state",
    "prime_mubs",
    "purity",
    "q_mu",
    "ququart_mubs",
    "qutrit_mubs",
    "random_mixed_states",
    "random_pure_states",
    "random_states",
    "read_state_file",
    "sanchez_ruiz_lower",
    "sanchez_ruiz_upper",
    "scenario_from_state",
    "shannon_entropy",
    "single_memory_partition",
    "singleton_partition",
    "state_from_dict",
    "state_to_dict",
    "tripartite_bounds",
    "verify_mub",
    "von_neumann_entropy",
    "with_subsystems",
    "write_state_file",
    "zhang_bound",
]
