//! Dense Hermitian linear algebra.

mod eigen;
mod json;
mod matrix;
mod operator;
mod spectral;

pub use eigen::{eigenvalues_tridiagonal, jacobi, EigenReport};
pub use json::{hermitian_from_json, matrix_from_json, matrix_to_json, MatrixJson};
pub use matrix::CMatrix;
pub use operator::{HermitianOperator, Projector, PsdOperator};
pub use spectral::{
    abs, eig_hermitian, fractional_power, is_orthogonal, positive_part_projectors, psd_order_leq,
    support_projector, tensor_power, trace_norm,
};

/// Numerical tolerances shared by the validated operator types.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative Frobenius defect allowed in `H = H*`.
    pub herm: f64,
    /// Slack on the smallest eigenvalue of a PSD operator.
    pub psd: f64,
    /// Eigendecomposition reconstruction and orthonormality.
    pub eig: f64,
    /// Relative cut below which eigenvalues count as zero.
    pub rank: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances { herm: 1e-10, psd: 1e-9, eig: 1e-12, rank: 1e-10 };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
