"""Fractional OAM overlaps, coherence and dimension witnesses, and a virtual single-image interferometer."""

from ._core import (
    FracMode,
    bench_overlap,
    certify_dimension,
    classify_region,
    complex_overlap,
    expand_in_lg,
    gram_determinant,
    gram_matrix,
    h_n,
    h_n_best_hub,
    in_classical,
    in_quantum,
    in_qubit,
    maximize,
    overlap_matrix,
    overlap_sq,
    overlap_sq_beta0,
    overlap_sq_equal_ell,
    sinc,
    solve_transcendental,
    trace_boundary,
    triple_from_states,
    violation_functions,
    witness_distance_classical,
    witness_distance_qubit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
