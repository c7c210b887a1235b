use std::fmt;
use std::ops::Deref;

use num_complex::Complex64;

use super::eigen::{eigenvalues_tridiagonal, jacobi, EigenReport};
use super::matrix::CMatrix;
use super::Tolerances;
use crate::error::{ensure_same_dim, Error, Result};

/// Above this dimension eigenvalue-only queries use tridiagonal QL instead
/// of Jacobi sweeps.
const JACOBI_MAX_DIM: usize = 48;

/// Dense self-adjoint matrix. The stored entries are exactly Hermitian:
/// construction validates the input and then replaces it by `(H + H*)/2`.
#[derive(Clone, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::DEFAULT.herm)
    }

    /// Accepts `m` when `‖m − m*‖_F ≤ tol · ‖m‖_F`.
    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        if m.dim() == 0 {
            return Err(Error::InvalidOperand("operator dimension must be at least 1".into()));
        }
        if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidOperand("operator has non-finite entries".into()));
        }
        let skew = (&m - &m.adjoint()).frobenius_norm();
        let scale = m.frobenius_norm();
        if skew > tol * scale {
            return Err(Error::InvalidOperand(format!(
                "matrix is not Hermitian: ‖H − H*‖_F = {skew:e} exceeds {tol:e} · ‖H‖_F"
            )));
        }
        Ok(Self::symmetrized(m))
    }

    /// Hermitian part of an arbitrary square matrix, without validation.
    pub fn symmetrized(m: CMatrix) -> Self {
        let n = m.dim();
        let mut h = m;
        for i in 0..n {
            h[(i, i)] = Complex64::new(h[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
                h[(i, j)] = avg;
                h[(j, i)] = avg.conj();
            }
        }
        HermitianOperator { m: h }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_diagonal(diag))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows)?)
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator { m: CMatrix::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator { m: CMatrix::identity(dim) }
    }

    /// `|v><v|`.
    pub fn rank_one(v: &[Complex64]) -> Self {
        Self::symmetrized(CMatrix::outer(v))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        Ok(HermitianOperator { m: self.m.try_add(&other.m)? })
    }

    pub fn sub(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        Ok(HermitianOperator { m: self.m.try_sub(&other.m)? })
    }

    pub fn scale(&self, c: f64) -> HermitianOperator {
        HermitianOperator { m: self.m.scale(c) }
    }

    pub fn kron(&self, other: &HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: self.m.kron(&other.m) }
    }

    /// `Tr(self · other)`; real for Hermitian operands up to rounding.
    pub fn trace_product(&self, other: &HermitianOperator) -> Result<f64> {
        Ok(self.m.trace_product(&other.m)?.re)
    }

    /// Full eigendecomposition (ascending eigenvalues).
    pub fn eig(&self) -> EigenReport {
        jacobi(&self.m)
    }

    /// Ascending eigenvalues only.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.dim() <= JACOBI_MAX_DIM {
            jacobi(&self.m).eigenvalues
        } else {
            eigenvalues_tridiagonal(&self.m)
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `f(H)` through the spectral decomposition.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        Self::symmetrized(self.eig().reconstruct(f))
    }

    /// Largest off-diagonal modulus is at most `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.m.max_off_diagonal() <= tol
    }
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianOperator(dim={}, {:?})", self.dim(), self.m.as_slice())
    }
}

/// Positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdOperator {
    base: HermitianOperator,
}

impl PsdOperator {
    pub fn new(base: HermitianOperator) -> Result<Self> {
        Self::with_tolerance(base, Tolerances::DEFAULT.psd)
    }

    /// Accepts `base` when `λ_min ≥ −tol · (1 + ‖base‖₁)`.
    pub fn with_tolerance(base: HermitianOperator, tol: f64) -> Result<Self> {
        let eigs = base.eigenvalues();
        let norm: f64 = eigs.iter().map(|l| l.abs()).sum();
        if eigs[0] < -tol * (1.0 + norm) {
            return Err(Error::InvalidOperand(format!(
                "operator is not positive semidefinite: minimum eigenvalue {:e}",
                eigs[0]
            )));
        }
        Ok(PsdOperator { base })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(diag)?)
    }

    pub fn zeros(dim: usize) -> Self {
        PsdOperator { base: HermitianOperator::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        PsdOperator { base: HermitianOperator::identity(dim) }
    }

    /// `|v><v|`.
    pub fn rank_one(v: &[Complex64]) -> Self {
        PsdOperator { base: HermitianOperator::rank_one(v) }
    }

    /// Skips validation; for operators PSD by construction.
    pub(crate) fn assume(base: HermitianOperator) -> Self {
        PsdOperator { base }
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.base
    }

    pub fn into_hermitian(self) -> HermitianOperator {
        self.base
    }

    /// Scaling by `c ≥ 0`.
    pub fn scale(&self, c: f64) -> Result<PsdOperator> {
        if !(c >= 0.0) {
            return Err(Error::Domain(format!("PSD operators can only be scaled by c ≥ 0, got {c}")));
        }
        Ok(PsdOperator { base: self.base.scale(c) })
    }

    pub fn add(&self, other: &PsdOperator) -> Result<PsdOperator> {
        Ok(PsdOperator { base: self.base.add(&other.base)? })
    }

    pub fn kron(&self, other: &PsdOperator) -> PsdOperator {
        PsdOperator { base: self.base.kron(&other.base) }
    }
}

impl Deref for PsdOperator {
    type Target = HermitianOperator;
    fn deref(&self) -> &HermitianOperator {
        &self.base
    }
}

/// Orthogonal projection (`P = P² = P*`).
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    base: PsdOperator,
}

impl Projector {
    pub fn new(base: HermitianOperator) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let m = base.matrix();
        let defect = (&(m * m) - m).frobenius_norm();
        if defect > tol.herm * m.frobenius_norm().max(1.0) {
            return Err(Error::InvalidOperand(format!("operator is not idempotent: ‖P² − P‖_F = {defect:e}")));
        }
        let eigs = base.eigenvalues();
        if let Some(bad) = eigs.iter().find(|&&l| l.abs() > tol.psd && (l - 1.0).abs() > tol.psd) {
            return Err(Error::InvalidOperand(format!("projector has eigenvalue {bad} outside {{0, 1}}")));
        }
        Ok(Projector { base: PsdOperator::assume(base) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(diag)?)
    }

    pub fn zeros(dim: usize) -> Self {
        Projector { base: PsdOperator::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Projector { base: PsdOperator::identity(dim) }
    }

    /// Projector onto the span of the given orthonormal vectors.
    pub fn onto(dim: usize, vectors: &[Vec<Complex64>]) -> Result<Self> {
        let mut m = CMatrix::zeros(dim);
        for v in vectors {
            ensure_same_dim("projector vector", dim, v.len())?;
            m = &m + &CMatrix::outer(v);
        }
        Self::new(HermitianOperator::new(m)?)
    }

    pub(crate) fn assume(base: HermitianOperator) -> Self {
        Projector { base: PsdOperator::assume(base) }
    }

    pub fn psd(&self) -> &PsdOperator {
        &self.base
    }

    pub fn into_psd(self) -> PsdOperator {
        self.base
    }

    /// `Tr P`, rounded to the nearest integer.
    pub fn rank(&self) -> usize {
        self.trace().round().max(0.0) as usize
    }
}

impl Deref for Projector {
    type Target = PsdOperator;
    fn deref(&self) -> &PsdOperator {
        &self.base
    }
}
