use hyptest::composite::{
    canonical_realization, composite_sum_error, conjectured_exponent, extract_params, reduced_eigen, reduced_matrix,
    rotated_realization, validate_assumptions, FamilyParams, JointOverlap, ParamsSampler, ReducedKind,
};
use hyptest::discrimination::chernoff_divergence;
use hyptest::linalg::trace_norm;
use hyptest::oracle::{tensor_error_bruteforce, OracleBudget};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A 4096-row dense oracle takes minutes; this keeps `n ≤ 5` for dimension
/// 4 and `n ≤ 4` for dimensions 5 and 6.
const ORACLE_DIM: usize = 1296;

fn sample(seed: u64, count: usize, sampler: ParamsSampler) -> Vec<FamilyParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.sample(&mut rng).unwrap()).collect()
}

#[test]
fn reduced_error_matches_dense_oracle() {
    let budget = OracleBudget::new(ORACLE_DIM, 10_000).unwrap();
    for params in sample(2024, 20, ParamsSampler::new(6)) {
        let family = canonical_realization(&params).unwrap();
        assert!(validate_assumptions(&family).is_empty(), "{params}");
        let mut n = 1;
        while budget.allows(family.dim(), n) {
            let dense = tensor_error_bruteforce(&family, n, &budget).unwrap();
            let reduced = composite_sum_error(&params, n).to_f64();
            assert!((dense - reduced).abs() <= 1e-9, "{params} n={n}: {dense} vs {reduced}");
            n += 1;
        }
    }
}

#[test]
fn oracle_does_not_depend_on_the_realization() {
    let budget = OracleBudget::new(600, 10_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for params in sample(31, 8, ParamsSampler::new(5)) {
        let canonical = canonical_realization(&params).unwrap();
        let rotated = rotated_realization(&params, 1, &mut rng).unwrap();
        let back = extract_params(&rotated).unwrap();
        assert_eq!(back.overlap_rank, params.overlap_rank);
        assert!((back.psi_in_pq - params.psi_in_pq).abs() < 1e-12);
        for n in 1..=3 {
            if !budget.allows(rotated.dim(), n) {
                break;
            }
            let a = tensor_error_bruteforce(&canonical, n, &budget).unwrap();
            let b = tensor_error_bruteforce(&rotated, n, &budget).unwrap();
            assert!((a - b).abs() <= 1e-9, "{params} n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn conjectured_exponent_matches_numeric_chernoff() {
    for params in sample(5, 30, ParamsSampler::new(6)) {
        let family = canonical_realization(&params).unwrap();
        let rho = family.rho();
        let c1 = chernoff_divergence(&rho, &family.sigma1()).unwrap().value;
        let c2 = chernoff_divergence(&rho, &family.sigma2()).unwrap().value;
        let numeric = (-c1).max(-c2);
        let closed = conjectured_exponent(&params);
        if closed.is_finite() {
            assert!((numeric - closed).abs() <= 1e-8, "{params}: {numeric} vs {closed}");
        } else {
            assert!(numeric < -30.0, "{params}: {numeric}");
        }
    }
}

#[test]
fn more_copies_never_hurt() {
    for params in sample(17, 40, ParamsSampler::new(8)) {
        let mut previous = composite_sum_error(&params, 1).value;
        for n in 2..=60 {
            let current = composite_sum_error(&params, n).value;
            assert!(current <= previous, "{params} n={n}");
            previous = current;
        }
    }
}

#[test]
fn reduced_spectrum_is_consistent() {
    let mut sampler = ParamsSampler::new(8);
    for overlap in [JointOverlap::Zero, JointOverlap::Positive] {
        sampler.joint_overlap = overlap;
        for params in sample(3, 30, sampler) {
            for n in [1, 2, 7, 30] {
                let eig = reduced_eigen(&params, n);
                let (p, q) = (params.rho_weight.powi(n as i32), params.sigma_weight.powi(n as i32));
                let trace = match eig.kind {
                    ReducedKind::A => 1.0 + q - p,
                    ReducedKind::B => 1.0 - 2.0 * p + 2.0 * q,
                };
                let sum: f64 = eig.eigenvalues.iter().sum();
                assert!((sum - trace).abs() <= 1e-10 * trace.abs().max(1.0), "{params} n={n}");

                let dense = trace_norm(&reduced_matrix(&params, n));
                assert!((dense - eig.trace_norm().to_f64()).abs() <= 1e-12 * dense.max(1.0));
                if eig.negative_count() == 1 {
                    let via_trace = sum - 2.0 * eig.eigenvalues[0];
                    assert!((via_trace - eig.trace_norm().to_f64()).abs() <= 1e-12);
                }
            }
        }
    }
}
