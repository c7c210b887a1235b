//! Composite discrimination of `ρ = P / Tr P` against `{σ₁ = Q / Tr Q,
//! σ₂ = |ψ><ψ|}` for commuting projections `P`, `Q`.

mod exact;
mod family;
mod params;
mod reduced;
mod secular;
mod series;
mod theorem;

pub use family::{
    canonical_realization, extract_params, rotated_realization, validate_assumptions, Assumption, JointOverlap,
    ParamsSampler, SpecialFamily,
};
pub use params::FamilyParams;
pub use reduced::{reduced_eigen, reduced_matrix, ReducedEigenReport, ReducedKind};
pub use secular::{RankOneUpdate, SecularRoot};
pub use exact::{
    asymptotic_norm, composite_sum_error, conjectured_exponent, exact_norm, pairwise_errors, remainder_ratio,
    AsymptoticNorm, CompositeError, NormBranch, CANCELLATION_TOL,
};
pub use series::{exponent_series, exponent_series_at, ExponentSeries, SeriesEntry};
pub use theorem::{
    verify_theorem, OracleAgreement, OracleReport, ProbeReport, TheoremReport, CHERNOFF_TOL, ORACLE_TOL,
};
