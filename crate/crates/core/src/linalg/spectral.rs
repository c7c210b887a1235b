//! Spectral functions of Hermitian and PSD operators.

use super::eigen::EigenReport;
use super::operator::{HermitianOperator, Projector, PsdOperator};
use super::Tolerances;
use crate::error::{ensure_same_dim, Error, Result};

/// Eigendecomposition with ascending eigenvalues; deterministic for
/// identical input bits.
pub fn eig_hermitian(h: &HermitianOperator) -> EigenReport {
    h.eig()
}

/// `‖H‖₁ = Σ |λ_i|`.
pub fn trace_norm(h: &HermitianOperator) -> f64 {
    h.eigenvalues().iter().map(|l| l.abs()).sum()
}

/// `|H| = (H²)^{1/2}`.
pub fn abs(h: &HermitianOperator) -> PsdOperator {
    PsdOperator::assume(h.map_spectrum(f64::abs))
}

/// Eigenvalues at or below this are treated as zero.
fn zero_threshold(eigenvalues: &[f64]) -> f64 {
    let largest = eigenvalues.iter().fold(0.0_f64, |m, &l| m.max(l));
    Tolerances::DEFAULT.rank * largest
}

/// `A^α` for `α ∈ [0, 1]`, with `0^α = 0` and `A⁰` the support projector.
/// Eigenvalues below the rank threshold count as zero for every `α`, which
/// keeps `α ↦ A^α` consistent with the `α = 0` convention.
pub fn fractional_power(a: &PsdOperator, alpha: f64) -> Result<PsdOperator> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("fractional power exponent {alpha} outside [0, 1]")));
    }
    if alpha == 1.0 {
        return Ok(a.clone());
    }
    let eig = a.eig();
    Ok(PsdOperator::assume(HermitianOperator::symmetrized(power_from_eigen(&eig, alpha))))
}

pub(crate) fn power_from_eigen(eig: &EigenReport, alpha: f64) -> super::CMatrix {
    let cut = zero_threshold(&eig.eigenvalues);
    eig.reconstruct(|l| if l <= cut { 0.0 } else if alpha == 0.0 { 1.0 } else { l.powf(alpha) })
}

/// Projector onto the span of eigenvectors with `λ > rank_tol · λ_max`.
pub fn support_projector(a: &PsdOperator) -> Projector {
    let eig = a.eig();
    let cut = zero_threshold(&eig.eigenvalues);
    Projector::assume(HermitianOperator::symmetrized(eig.reconstruct(|l| if l > cut { 1.0 } else { 0.0 })))
}

/// `({X > 0}, {X ≥ 0})`. Eigenvalues within `rank_tol · max|λ|` of zero
/// belong to the kernel.
pub fn positive_part_projectors(x: &HermitianOperator) -> (Projector, Projector) {
    let eig = x.eig();
    let largest = eig.eigenvalues.iter().fold(0.0_f64, |m, &l| m.max(l.abs()));
    let cut = Tolerances::DEFAULT.rank * largest;
    let strict = eig.reconstruct(|l| if l > cut { 1.0 } else { 0.0 });
    let weak = eig.reconstruct(|l| if l >= -cut { 1.0 } else { 0.0 });
    (
        Projector::assume(HermitianOperator::symmetrized(strict)),
        Projector::assume(HermitianOperator::symmetrized(weak)),
    )
}

/// `|Tr AB| ≤ tol · (1 + Tr A)(1 + Tr B)`.
pub fn is_orthogonal(a: &PsdOperator, b: &PsdOperator, tol: f64) -> Result<bool> {
    ensure_same_dim("orthogonality test", a.dim(), b.dim())?;
    let overlap = a.trace_product(b)?;
    Ok(overlap.abs() <= tol * (1.0 + a.trace()) * (1.0 + b.trace()))
}

/// `A ≤ B` in the PSD order: `λ_min(B − A) ≥ −tol`.
pub fn psd_order_leq(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<bool> {
    ensure_same_dim("PSD order", a.dim(), b.dim())?;
    Ok(b.sub(a)?.min_eigenvalue() >= -tol)
}

/// `A^{⊗n}`, refusing results with more than `max_dim` rows.
pub fn tensor_power(a: &HermitianOperator, n: usize, max_dim: usize) -> Result<HermitianOperator> {
    if n == 0 {
        return Err(Error::Domain("tensor power requires n ≥ 1".into()));
    }
    let fits = u32::try_from(n)
        .ok()
        .and_then(|e| a.dim().checked_pow(e))
        .is_some_and(|d| d <= max_dim);
    if !fits {
        return Err(Error::Resource(format!(
            "tensor power {}^{n} exceeds the dimension cap {max_dim}",
            a.dim()
        )));
    }
    let mut out = a.clone();
    for _ in 1..n {
        out = out.kron(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use num_complex::Complex64;

    fn diag(d: &[f64]) -> HermitianOperator {
        HermitianOperator::from_real_diagonal(d).unwrap()
    }

    fn psd(d: &[f64]) -> PsdOperator {
        PsdOperator::from_real_diagonal(d).unwrap()
    }

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).frobenius_norm() <= tol
    }

    #[test]
    fn eig_examples() {
        assert_eq!(eig_hermitian(&diag(&[3.0, 1.0, 2.0])).eigenvalues, vec![1.0, 2.0, 3.0]);
        assert_eq!(eig_hermitian(&HermitianOperator::identity(4)).eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&diag(&[1.0, -2.0])), 3.0);
        assert_eq!(trace_norm(&HermitianOperator::zeros(5)), 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [Complex64::new(s, 0.0), Complex64::new(0.0, s)];
        assert!((trace_norm(&HermitianOperator::rank_one(&v)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fractional_power_examples() {
        let r = fractional_power(&psd(&[4.0, 9.0]), 0.5).unwrap();
        assert!(close(r.matrix(), &CMatrix::from_diagonal(&[2.0, 3.0]), 1e-14));
        let a = psd(&[0.3, 0.7]);
        assert_eq!(fractional_power(&a, 1.0).unwrap(), a);
        let r = fractional_power(&psd(&[0.0, 2.0]), 0.0).unwrap();
        assert!(close(r.matrix(), &CMatrix::from_diagonal(&[0.0, 1.0]), 1e-15));
        assert!(matches!(fractional_power(&a, 1.5), Err(Error::Domain(_))));
        assert!(matches!(fractional_power(&a, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn support_projector_examples() {
        let p = support_projector(&psd(&[0.0, 3.0]));
        assert!(close(p.matrix(), &CMatrix::from_diagonal(&[0.0, 1.0]), 1e-15));
        assert_eq!(support_projector(&PsdOperator::zeros(3)).matrix(), &CMatrix::zeros(3));
        let s = 3f64.sqrt().recip();
        let v = [Complex64::new(s, 0.0), Complex64::new(0.0, s), Complex64::new(-s, 0.0)];
        let three = PsdOperator::rank_one(&v).scale(3.0).unwrap();
        let p = support_projector(&three);
        assert!(close(p.matrix(), &CMatrix::outer(&v), 1e-14));
    }

    #[test]
    fn positive_part_examples() {
        let (gt, ge) = positive_part_projectors(&diag(&[2.0, -1.0, 0.0]));
        assert!(close(gt.matrix(), &CMatrix::from_diagonal(&[1.0, 0.0, 0.0]), 1e-15));
        assert!(close(ge.matrix(), &CMatrix::from_diagonal(&[1.0, 0.0, 1.0]), 1e-15));

        let (gt, ge) = positive_part_projectors(&HermitianOperator::zeros(2));
        assert_eq!(gt.matrix(), &CMatrix::zeros(2));
        assert!(close(ge.matrix(), &CMatrix::identity(2), 0.0));

        let x = HermitianOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (gt, _) = positive_part_projectors(&x);
        let half = CMatrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(close(gt.matrix(), &half, 1e-14));
    }

    #[test]
    fn orthogonality_examples() {
        assert!(is_orthogonal(&psd(&[1.0, 0.0]), &psd(&[0.0, 1.0]), 1e-12).unwrap());
        let p = psd(&[1.0, 0.0]);
        assert!(!is_orthogonal(&p, &p, 1e-12).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PsdOperator::rank_one(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]);
        assert!(!is_orthogonal(&p, &plus, 1e-12).unwrap());
        assert!(matches!(is_orthogonal(&p, &psd(&[1.0; 3]), 1e-12), Err(Error::Shape(_))));
    }

    #[test]
    fn tensor_power_examples() {
        let t = tensor_power(&diag(&[1.0, 0.0]), 2, 4096).unwrap();
        assert_eq!(t.matrix(), &CMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]));
        let a = diag(&[0.2, -0.4]);
        assert_eq!(tensor_power(&a, 1, 4096).unwrap(), a);
        assert_eq!(tensor_power(&diag(&[1.0, 2.0]), 3, 4096).unwrap().trace(), 27.0);
        assert!(matches!(tensor_power(&a, 13, 4096), Err(Error::Resource(_))));
        assert!(matches!(tensor_power(&a, 200, 4096), Err(Error::Resource(_))));
    }

    #[test]
    fn psd_order_examples() {
        assert!(psd_order_leq(&diag(&[1.0, 2.0]), &diag(&[2.0, 2.0]), 1e-12).unwrap());
        assert!(!psd_order_leq(&diag(&[1.0, 2.0]), &diag(&[2.0, 1.0]), 1e-12).unwrap());
        assert!(!psd_order_leq(&diag(&[2.0, 1.0]), &diag(&[1.0, 2.0]), 1e-12).unwrap());
        let a = diag(&[0.1, -3.0]);
        assert!(psd_order_leq(&a, &a, 0.0).unwrap());
    }
}
