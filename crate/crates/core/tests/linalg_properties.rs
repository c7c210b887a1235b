use hyptest::linalg::{
    eigenvalues_tridiagonal, fractional_power, is_orthogonal, jacobi, tensor_power, trace_norm, CMatrix,
    HermitianOperator, PsdOperator,
};
use hyptest::sampling::{random_density, random_hermitian, random_psd, random_unitary};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn conjugate(h: &HermitianOperator, u: &CMatrix) -> HermitianOperator {
    HermitianOperator::symmetrized(&(u * h.matrix()) * &u.adjoint())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_is_unitarily_invariant(seed in any::<u64>(), dim in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(dim, &mut rng);
        let u = random_unitary(dim, &mut rng);
        let rotated = conjugate(&h, &u);
        let scale = 1.0 + h.matrix().frobenius_norm();
        for (a, b) in h.eigenvalues().iter().zip(rotated.eigenvalues()) {
            prop_assert!((a - b).abs() < 1e-12 * scale);
        }
        prop_assert!((trace_norm(&h) - trace_norm(&rotated)).abs() < 1e-12 * scale * dim as f64);
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), dim in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(dim, &mut rng);
        let eig = jacobi(h.matrix());
        let back = eig.reconstruct(|l| l);
        prop_assert!((&back - h.matrix()).frobenius_norm() < 1e-12 * (1.0 + h.matrix().frobenius_norm()));
        prop_assert!(eig.orthonormality_defect() < 1e-12);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn fractional_powers_multiply(seed in any::<u64>(), dim in 1usize..6, a in 0.0f64..0.5, b in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = rng.gen_range(1..=dim);
        let x = random_density(dim, rank, &mut rng);
        let xa = fractional_power(&x, a).unwrap();
        let xb = fractional_power(&x, b).unwrap();
        let xab = fractional_power(&x, a + b).unwrap();
        let product = xa.matrix() * xb.matrix();
        prop_assert!((&product - xab.matrix()).frobenius_norm() < 1e-9);
    }

    #[test]
    fn orthogonal_supports_add_traces(seed in any::<u64>(), split in 1usize..4, extra in 1usize..4) {
        // Two PSD operators on complementary coordinate blocks, then rotated.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = split + extra;
        let x = random_psd(split, &mut rng);
        let y = random_psd(extra, &mut rng);
        let embed = |m: &CMatrix, offset: usize| {
            CMatrix::from_fn(dim, |i, j| {
                if i >= offset && j >= offset && i - offset < m.dim() && j - offset < m.dim() {
                    m[(i - offset, j - offset)]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        };
        let u = random_unitary(dim, &mut rng);
        let a = PsdOperator::new(conjugate(&HermitianOperator::symmetrized(embed(x.matrix(), 0)), &u)).unwrap();
        let b = PsdOperator::new(conjugate(&HermitianOperator::symmetrized(embed(y.matrix(), split)), &u)).unwrap();
        prop_assert!(is_orthogonal(&a, &b, 1e-10).unwrap());
        let norm = trace_norm(&a.sub(&b).unwrap());
        prop_assert!((norm - a.trace() - b.trace()).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_is_multiplicative(seed in any::<u64>(), dim in 2usize..4, n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(dim, &mut rng);
        let power = tensor_power(&h, n, 4096).unwrap();
        let want = trace_norm(&h).powi(n as i32);
        prop_assert!((trace_norm(&power) - want).abs() < 1e-10 * want.max(1.0));
    }

    #[test]
    fn tridiagonal_route_matches_jacobi(seed in any::<u64>(), dim in 49usize..72, real in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(dim, &mut rng);
        let m = if real {
            CMatrix::from_fn(dim, |i, j| Complex64::new(h.matrix()[(i, j)].re, 0.0))
        } else {
            h.matrix().clone()
        };
        let fast = eigenvalues_tridiagonal(&m);
        let slow = jacobi(&m).eigenvalues;
        let scale = m.frobenius_norm();
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() < 1e-11 * scale);
        }
    }
}

#[test]
fn graded_kronecker_power_has_finite_spectrum() {
    // Entries span hundreds of orders of magnitude after the fourth power.
    let base = HermitianOperator::from_real_rows(&[
        vec![1.0, 1e-40, 0.0],
        vec![1e-40, 1e-45, 1e-43],
        vec![0.0, 1e-43, 0.5],
    ])
    .unwrap();
    let power = tensor_power(&base, 4, 4096).unwrap();
    let fast = eigenvalues_tridiagonal(power.matrix());
    let slow = jacobi(power.matrix()).eigenvalues;
    assert!(fast.iter().all(|l| l.is_finite()));
    for (a, b) in fast.iter().zip(&slow) {
        assert!((a - b).abs() < 1e-14, "{a} vs {b}");
    }
}
