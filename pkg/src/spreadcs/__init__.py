"""Spread spectrum compressed sensing.

Random or chirp pre-modulation followed by random projection onto an
orthonormal basis, l1 recovery over matrix-free operators, coherence
diagnostics, and a reproducible experiment harness.
"""

from .coherence import (
    CoherenceReport,
    analog_coherence,
    modulated_coherence,
    modulus_coherence,
    mutual_coherence,
    tail_bound_violation_rate,
)
from .experiments import (
    CellResult,
    ExperimentReport,
    SensingConfig,
    TrialResult,
    add_noise,
    best_s_term_error,
    build_acquisition,
    default_m_grid,
    generate_sparse_signal,
    phase_transition,
    recovery_curve,
    run_trial,
)
from .modulation import (
    ModulationSpec,
    make_chirp_modulation,
    make_random_modulation,
    make_upsampler,
    modulation_operator,
    no_modulation,
    upsampled_size,
)
from .operators import (
    IndexSet,
    LinearOperator,
    compose,
    dense_matrix,
    dot_test,
    identity,
    is_universal,
    make_transform,
    matrix_operator,
    restrict_rows,
    sample_indices,
)
from .solver import SolverOptions, SolverResult, complex_soft_threshold, solve_bpdn

__version__ = "0.1.0"
