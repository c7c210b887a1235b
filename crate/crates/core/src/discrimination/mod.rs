//! Single-shot state discrimination and the Chernoff divergence.

mod chernoff;
mod single;
mod state;
mod worst_case;

pub use chernoff::{audenaert_check, audenaert_sides, chernoff_divergence, ChernoffObjective, ChernoffResult};
pub use single::{
    binary_error_value, binary_optimal_error, born_probabilities, classical_optimal, error_probability,
    hybrid_sup_binary, success_probability, verify_optimality, BinaryOptimum, ClassicalOptimum,
    OptimalityCertificate,
};
pub use state::{is_valid_povm, GeneralizedState, Povm, TOL_POVM};
pub use worst_case::{worst_case_composite_error, WorstCase};
