"""Exact desk-scale calculations on compound quantum states.

The package covers five connected strands: Schmidt structure and
entanglement of bipartite states, conditionalization of a state on a
measurement context, spin-pair correlations with their locality
diagnostics, algebraic obstructions to context-free value assignments,
and qubit reconstruction from mutually unbiased bases.  Everything is
small and dense enough to verify against hand calculations.
"""

from .contexts import (
    BooleanLatticeReport,
    ContextualState,
    EquivalenceResult,
    MeasurementContext,
    Observable,
    RepresentativenessReport,
    boolean_lattice_check,
    check_representative,
    context,
    contexts_distance,
    luders_nonselective,
    observable,
    sequential_luders,
    statistical_equivalence,
)
from .contextuality import (
    AssignmentSearchResult,
    ParityContradictionReport,
    ValueAssignmentProblem,
    ValueDependenceReport,
    ghz_contradiction,
    mermin_peres_square,
    search_noncontextual_assignment,
    value_dependence_demo,
)
from .correlations import (
    CorrelationRecord,
    Direction,
    chsh,
    chsh_optimal_settings,
    conditional_remote_state,
    correlation,
    joint_probabilities,
    no_signalling_check,
    outcome_dependence,
    spin_observable,
)
from .linalg import (
    ConvergenceError,
    DimensionError,
    SpectralDecomposition,
    commutator,
    commutes,
    evolution_operator,
    jacobi_eigh,
    partial_trace,
    spectral_decompose,
    tensor,
    trace_distance,
)
from .mub import (
    MeasurementStatistics,
    MubSet,
    measure_statistics,
    mub_qubit,
    reconstruct,
)
from .states import (
    DensityOperator,
    PureState,
    SchmidtDecomposition,
    as_density,
    coupled_spins_hamiltonian,
    entangling_evolution_demo,
    evolve_pure_state,
    is_noninteracting,
    is_product,
    make_ghz,
    make_singlet,
    product_basis_state,
    reduced_state,
    schmidt,
    total_spin_squared,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentSearchResult",
    "BooleanLatticeReport",
    "ContextualState",
    "ConvergenceError",
    "CorrelationRecord",
    "DensityOperator",
    "DimensionError",
    "Direction",
    "EquivalenceResult",
    "MeasurementContext",
    "MeasurementStatistics",
    "MubSet",
    "Observable",
    "ParityContradictionReport",
    "PureState",
    "RepresentativenessReport",
    "SchmidtDecomposition",
    "SpectralDecomposition",
    "ValueAssignmentProblem",
    "ValueDependenceReport",
    "as_density",
    "boolean_lattice_check",
    "check_representative",
    "chsh",
    "chsh_optimal_settings",
    "commutator",
    "commutes",
    "conditional_remote_state",
    "context",
    "contexts_distance",
    "correlation",
    "coupled_spins_hamiltonian",
    "entangling_evolution_demo",
    "evolution_operator",
    "evolve_pure_state",
    "ghz_contradiction",
    "is_noninteracting",
    "is_product",
    "jacobi_eigh",
    "joint_probabilities",
    "luders_nonselective",
    "make_ghz",
    "make_singlet",
    "measure_statistics",
    "mermin_peres_square",
    "mub_qubit",
    "no_signalling_check",
    "observable",
    "outcome_dependence",
    "partial_trace",
    "product_basis_state",
    "reconstruct",
    "reduced_state",
    "schmidt",
    "search_noncontextual_assignment",
    "sequential_luders",
    "spectral_decompose",
    "spin_observable",
    "statistical_equivalence",
    "tensor",
    "total_spin_squared",
    "trace_distance",
    "value_dependence_demo",
]
