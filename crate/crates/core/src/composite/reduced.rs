//! The small matrices that carry the whole `n`-copy trace norm.
//!
//! Writing `ψ^{⊗n}` in the joint eigenbasis of `P^{⊗n}` and `Q^{⊗n}`, the
//! operator `σ₁^{⊗n} + σ₂^{⊗n} − ρ^{⊗n}` is diagonal except on the span of
//! the projections of `ψ^{⊗n}` onto the blocks. There it equals a diagonal
//! matrix of block values plus `φφᵀ`, with `φ_k²` the weight of `ψ^{⊗n}` in
//! block `k`:
//!
//! - no joint overlap (`r = 0`): 3×3 with block values `(−pⁿ, qⁿ, 0)` and
//!   weights `(tⁿ, sⁿ, 1 − tⁿ − sⁿ)`;
//! - otherwise 4×4 with block values `(−pⁿ, qⁿ − pⁿ, qⁿ, 0)` and weights
//!   `(tⁿ − rⁿ, rⁿ, sⁿ − rⁿ, 1 − tⁿ − sⁿ + rⁿ)`.

use num_complex::Complex64;

use super::params::FamilyParams;
use super::secular::{RankOneUpdate, SecularRoot};
use crate::dd::DoubleDouble as DD;
use crate::linalg::{jacobi, CMatrix, HermitianOperator};

/// Agreement required between the dense and the secular eigenvalues,
/// relative to `max(1, max |λ|)`.
const CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedKind {
    /// 3×3, used when `r = 0`.
    A,
    /// 4×4, used when `r > 0`.
    B,
}

impl ReducedKind {
    pub fn of(params: &FamilyParams) -> Self {
        if params.has_joint_overlap() {
            ReducedKind::B
        } else {
            ReducedKind::A
        }
    }
}

/// Diagonal part and weights of the reduced matrix, in double-double.
pub(crate) fn reduced_update(params: &FamilyParams, n: u32) -> (ReducedKind, Vec<DD>, Vec<DD>) {
    let pow = |x: f64| DD::from(x).powi(n);
    let (pn, qn) = (pow(params.rho_weight), pow(params.sigma_weight));
    let (tn, sn, rn) = (pow(params.psi_in_p), pow(params.psi_in_q), pow(params.psi_in_pq));
    let kind = ReducedKind::of(params);
    match kind {
        ReducedKind::A => (kind, vec![-pn, qn, DD::ZERO], vec![tn, sn, DD::ONE - tn - sn]),
        ReducedKind::B => (
            kind,
            vec![-pn, qn - pn, qn, DD::ZERO],
            vec![tn - rn, rn, sn - rn, DD::ONE - tn - sn + rn],
        ),
    }
}

/// The reduced matrix for `n` copies: 3×3 when `r = 0`, 4×4 otherwise.
/// Off-diagonal entries `√(w_i w_j)` are nonnegative.
pub fn reduced_matrix(params: &FamilyParams, n: u32) -> HermitianOperator {
    let (_, poles, weights) = reduced_update(params, n);
    let phi: Vec<DD> = weights.iter().map(|w| if w.is_sign_negative() { DD::ZERO } else { w.sqrt() }).collect();
    let m = CMatrix::from_fn(poles.len(), |i, j| {
        let mut x = phi[i] * phi[j];
        if i == j {
            x = poles[i] + weights[i].max(DD::ZERO);
        }
        Complex64::new(x.to_f64(), 0.0)
    });
    HermitianOperator::symmetrized(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedEigenReport {
    pub n: u32,
    pub kind: ReducedKind,
    /// Ascending eigenvalues from the secular equation.
    pub eigenvalues: Vec<f64>,
    /// Same eigenvalues in double-double.
    pub eigenvalues_dd: Vec<DD>,
    /// Ascending eigenvalues of the rounded matrix from the dense solver.
    pub dense_eigenvalues: Vec<f64>,
    /// Largest difference between the two eigenvalue lists.
    pub disagreement: f64,
    /// The two methods disagree beyond tolerance.
    pub precision_loss: bool,
    /// `a_0 .. a_{m−1}` of `det(λI − M) = λ^m + a_{m−1} λ^{m−1} + … + a_0`.
    pub coeffs: Vec<f64>,
    /// `Σ_k min(μ_k, |d_k|)` over negative block values `d_k`, where `μ_k`
    /// is the shift of the eigenvalue attached to `d_k`. This is the part of
    /// the negative block values not cancelled by the rank-one term.
    pub negative_excess: DD,
}

impl ReducedEigenReport {
    pub fn trace(&self) -> DD {
        self.eigenvalues_dd.iter().copied().sum()
    }

    pub fn trace_norm(&self) -> DD {
        self.eigenvalues_dd.iter().map(|l| l.abs()).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.eigenvalues_dd.iter().filter(|l| l.is_sign_negative()).count()
    }
}

pub fn reduced_eigen(params: &FamilyParams, n: u32) -> ReducedEigenReport {
    let (kind, poles, weights) = reduced_update(params, n);
    let update = RankOneUpdate::new(poles, weights);
    let roots = update.roots();
    let negative_excess = roots
        .iter()
        .filter(|r| r.pole.is_sign_negative())
        .map(|r: &SecularRoot| r.shift.min(r.pole.abs()))
        .sum();
    let eigenvalues_dd: Vec<DD> = roots.iter().map(SecularRoot::value).collect();
    let eigenvalues: Vec<f64> = eigenvalues_dd.iter().map(|l| l.to_f64()).collect();

    let dense_eigenvalues = jacobi(reduced_matrix(params, n).matrix()).eigenvalues;
    let disagreement = eigenvalues.iter().zip(&dense_eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let scale = eigenvalues.iter().fold(1.0_f64, |m, l| m.max(l.abs()));

    ReducedEigenReport {
        n,
        kind,
        eigenvalues,
        eigenvalues_dd,
        dense_eigenvalues,
        disagreement,
        precision_loss: disagreement > CROSS_CHECK_TOL * scale,
        coeffs: update.char_poly().iter().map(|c| c.to_f64()).collect(),
        negative_excess,
    }
}
