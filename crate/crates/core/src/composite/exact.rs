//! Exact `n`-copy composite error, pairwise errors, leading-order trace
//! norms and the conjectured exponent.
//!
//! With `S(n)` the negative excess of the reduced matrix (see
//! [`ReducedEigenReport::negative_excess`]), the optimal error against the
//! sum of the alternatives is
//!
//! `P_e(n) = (R · min{p, q})ⁿ + S(n)`,
//!
//! and the reduced trace norm is `L(n) − 2 S(n)` with `L = 1 + pⁿ + qⁿ`
//! (3×3) or `L = 1 + 2 max{p, q}ⁿ` (4×4). Both forms avoid subtracting
//! nearly equal quantities.

use super::params::FamilyParams;
use super::reduced::{reduced_eigen, ReducedEigenReport, ReducedKind};
use crate::dd::DoubleDouble as DD;

/// Relative disagreement between the direct and the trace-minus-norm form
/// above which a value is flagged.
pub const CANCELLATION_TOL: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct CompositeError {
    pub n: u32,
    /// `P_e*(ρ^{⊗n}, σ₁^{⊗n} + σ₂^{⊗n})` from the eigenvalue shifts.
    pub value: DD,
    /// The same quantity as `½(L + 2(R·min)ⁿ − Σ|λ_i|)`, which cancels.
    pub naive: DD,
    pub precision_loss: bool,
}

impl CompositeError {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn ln(&self) -> f64 {
        self.value.ln()
    }
}

fn pow(x: f64, n: u32) -> DD {
    DD::from(x).powi(n)
}

/// `L(n)`: reduced trace plus twice the negative block values.
fn norm_ceiling(params: &FamilyParams, kind: ReducedKind, n: u32) -> DD {
    let (pn, qn) = (pow(params.rho_weight, n), pow(params.sigma_weight, n));
    match kind {
        ReducedKind::A => DD::ONE + pn + qn,
        ReducedKind::B => DD::ONE + pn.max(qn) * 2.0,
    }
}

pub fn composite_sum_error(params: &FamilyParams, n: u32) -> CompositeError {
    composite_from_eigen(params, &reduced_eigen(params, n))
}

pub(crate) fn composite_from_eigen(params: &FamilyParams, eig: &ReducedEigenReport) -> CompositeError {
    let n = eig.n;
    let projection = pow(params.projection_base(), n);
    let value = projection + eig.negative_excess;
    let naive = (norm_ceiling(params, eig.kind, n) + projection * 2.0 - eig.trace_norm()) * 0.5;
    let gap = (naive - value).abs().to_f64();
    let precision_loss = eig.precision_loss || gap > CANCELLATION_TOL * value.to_f64();
    CompositeError { n, value, naive, precision_loss }
}

/// `(e₁, e₂)`: optimal errors of `ρ` against `σ₁` alone and `σ₂` alone,
/// `e₁ = (R·min{p,q})ⁿ` and `e₂ = 2(pt)ⁿ / (1 + pⁿ + √((1 − pⁿ)² + 4pⁿ(1 − tⁿ)))`.
pub fn pairwise_errors(params: &FamilyParams, n: u32) -> [DD; 2] {
    let pn = pow(params.rho_weight, n);
    let tn = pow(params.psi_in_p, n);
    let one_minus = DD::ONE - pn;
    let root = (one_minus * one_minus + pn * (DD::ONE - tn) * 4.0).sqrt();
    let pure = pow(params.pure_base(), n) * 2.0 / (DD::ONE + pn + root);
    [pow(params.projection_base(), n), pure]
}

/// Which leading-order formula describes the reduced trace norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormBranch {
    /// `r = 0`: `1 + pⁿ + qⁿ − 2(pt)ⁿ`.
    ThreeByThree,
    /// `r > 0`, `pt < q`: `1 + pⁿ + qⁿ + |pⁿ − qⁿ|`.
    FourByFourBelow,
    /// `r > 0`, `pt ≥ q`: `1 + pⁿ + qⁿ + |pⁿ − qⁿ| − 2(pt)ⁿ`.
    FourByFourAbove,
}

impl NormBranch {
    pub fn of(params: &FamilyParams) -> Self {
        if !params.has_joint_overlap() {
            NormBranch::ThreeByThree
        } else if params.pure_base() < params.sigma_weight {
            NormBranch::FourByFourBelow
        } else {
            NormBranch::FourByFourAbove
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormBranch::ThreeByThree => "3x3",
            NormBranch::FourByFourBelow => "4x4 pt<q",
            NormBranch::FourByFourAbove => "4x4 pt>=q",
        }
    }

    fn subtracts_pure_term(self) -> bool {
        !matches!(self, NormBranch::FourByFourBelow)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticNorm {
    pub value: DD,
    pub branch: NormBranch,
    /// Size the remainder is measured against: `(pt)ⁿ`, or `min{p,q}ⁿ`
    /// on the `pt < q` branch.
    pub remainder_scale: DD,
}

pub fn asymptotic_norm(params: &FamilyParams, n: u32) -> AsymptoticNorm {
    let branch = NormBranch::of(params);
    let ceiling = norm_ceiling(params, ReducedKind::of(params), n);
    let pure = pow(params.pure_base(), n);
    if branch.subtracts_pure_term() {
        AsymptoticNorm { value: ceiling - pure * 2.0, branch, remainder_scale: pure }
    } else {
        AsymptoticNorm { value: ceiling, branch, remainder_scale: pow(params.min_weight(), n) }
    }
}

/// Trace norm of the reduced matrix, `L(n) − 2S(n)`.
pub fn exact_norm(params: &FamilyParams, n: u32) -> DD {
    let eig = reduced_eigen(params, n);
    norm_ceiling(params, eig.kind, n) - eig.negative_excess * 2.0
}

/// `|exact norm − asymptotic_norm| / remainder scale`, with the difference
/// formed without cancellation: `2|(pt)ⁿ − S|` or `2S`. Zero when the
/// difference vanishes.
pub fn remainder_ratio(params: &FamilyParams, n: u32) -> f64 {
    let eig = reduced_eigen(params, n);
    let asym = asymptotic_norm(params, n);
    let diff = if asym.branch.subtracts_pure_term() {
        (pow(params.pure_base(), n) - eig.negative_excess).abs() * 2.0
    } else {
        eig.negative_excess * 2.0
    };
    if diff.is_zero() {
        0.0
    } else {
        (diff / asym.remainder_scale).to_f64()
    }
}

/// `log max{R · min{p, q}, p · t}`; `−∞` when both vanish.
pub fn conjectured_exponent(params: &FamilyParams) -> f64 {
    params.projection_base().max(params.pure_base()).ln()
}
