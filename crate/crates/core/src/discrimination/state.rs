use std::fmt;

use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::{HermitianOperator, PsdOperator};

/// A PSD operator standing for a prior-weighted state `A_i = p_i ρ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedState {
    label: String,
    op: PsdOperator,
    zero: bool,
}

impl GeneralizedState {
    /// Requires a strictly positive trace.
    pub fn new(label: impl Into<String>, op: PsdOperator) -> Result<Self> {
        let label = label.into();
        if !(op.trace() > 0.0) {
            return Err(Error::InvalidState(format!(
                "state {label:?} has trace {}; use `zero_allowed` for the zero operator",
                op.trace()
            )));
        }
        Ok(GeneralizedState { label, op, zero: false })
    }

    /// Accepts any PSD operator; zero-trace operators are flagged.
    pub fn zero_allowed(label: impl Into<String>, op: PsdOperator) -> Self {
        let zero = !(op.trace() > 0.0);
        GeneralizedState { label: label.into(), op, zero }
    }

    pub fn from_diagonal(label: impl Into<String>, diag: &[f64]) -> Result<Self> {
        Self::new(label, PsdOperator::from_real_diagonal(diag)?)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn op(&self) -> &PsdOperator {
        &self.op
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        self.op.hermitian()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn trace(&self) -> f64 {
        self.op.trace()
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }
}

impl fmt::Display for GeneralizedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, trace {})", self.label, self.dim(), self.trace())
    }
}

/// Finite family of PSD effects summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    effects: Vec<PsdOperator>,
}

/// Completeness tolerance for [`Povm::new`].
pub const TOL_POVM: f64 = 1e-9;

impl Povm {
    pub fn new(effects: Vec<PsdOperator>) -> Result<Self> {
        if !is_valid_povm(&effects, TOL_POVM)? {
            return Err(Error::InvalidOperand("effects do not form a POVM".into()));
        }
        Ok(Povm { effects })
    }

    /// Two-outcome measurement `{T, I − T}`.
    pub fn binary(t: PsdOperator) -> Result<Self> {
        let complement = HermitianOperator::identity(t.dim()).sub(&t)?;
        Self::new(vec![t, PsdOperator::new(complement)?])
    }

    /// Projective measurement in the computational basis.
    pub fn computational_basis(dim: usize) -> Self {
        let effects = (0..dim)
            .map(|k| {
                let mut d = vec![0.0; dim];
                d[k] = 1.0;
                PsdOperator::from_real_diagonal(&d).expect("basis projector")
            })
            .collect();
        Povm { effects }
    }

    pub(crate) fn assume(effects: Vec<PsdOperator>) -> Self {
        Povm { effects }
    }

    pub fn effects(&self) -> &[PsdOperator] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }
}

/// Completeness `‖Σ M_x − I‖_F ≤ tol` and positivity `λ_min(M_x) ≥ −tol`.
pub fn is_valid_povm(effects: &[PsdOperator], tol: f64) -> Result<bool> {
    let Some(first) = effects.first() else {
        return Ok(false);
    };
    let dim = first.dim();
    let mut total = HermitianOperator::zeros(dim);
    for e in effects {
        ensure_same_dim("POVM effect", dim, e.dim())?;
        if e.min_eigenvalue() < -tol {
            return Ok(false);
        }
        total = total.add(e)?;
    }
    let defect = total.sub(&HermitianOperator::identity(dim))?.matrix().frobenius_norm();
    Ok(defect <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psd(d: &[f64]) -> PsdOperator {
        PsdOperator::from_real_diagonal(d).unwrap()
    }

    #[test]
    fn povm_validity_examples() {
        assert!(is_valid_povm(&[psd(&[1.0, 0.0]), psd(&[0.0, 1.0])], 1e-9).unwrap());
        assert!(is_valid_povm(&[PsdOperator::identity(3)], 1e-9).unwrap());
        assert!(!is_valid_povm(&[psd(&[1.0, 0.0]), psd(&[0.0, 0.5])], 1e-9).unwrap());
        assert!(matches!(is_valid_povm(&[psd(&[1.0]), psd(&[0.0, 1.0])], 1e-9), Err(Error::Shape(_))));
        assert!(!is_valid_povm(&[], 1e-9).unwrap());
    }

    #[test]
    fn binary_povm() {
        let m = Povm::binary(psd(&[1.0, 0.25])).unwrap();
        assert_eq!(m.len(), 2);
        assert!(Povm::binary(psd(&[2.0, 0.0])).is_err());
    }

    #[test]
    fn zero_states_need_explicit_flag() {
        assert!(matches!(GeneralizedState::new("z", PsdOperator::zeros(2)), Err(Error::InvalidState(_))));
        let z = GeneralizedState::zero_allowed("z", PsdOperator::zeros(2));
        assert!(z.is_zero());
        assert!(!GeneralizedState::zero_allowed("a", psd(&[1.0, 0.0])).is_zero());
    }
}
