//! Single-shot discrimination: Born rule, success and error probabilities,
//! classical and binary optima, and the optimality certificate.

use super::state::{GeneralizedState, Povm};
use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::{
    abs, positive_part_projectors, trace_norm, CMatrix, HermitianOperator, PsdOperator, Tolerances,
};

/// `(Tr ρ M_x)_x` for a unit-trace state.
pub fn born_probabilities(state: &GeneralizedState, m: &Povm) -> Result<Vec<f64>> {
    ensure_same_dim("Born rule", state.dim(), m.dim())?;
    if (state.trace() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidState(format!(
            "Born probabilities need a unit-trace state, {} has trace {}",
            state.label(),
            state.trace()
        )));
    }
    m.effects().iter().map(|e| state.op().trace_product(e)).collect()
}

fn check_ensemble(states: &[GeneralizedState], m: &Povm) -> Result<()> {
    if states.len() != m.len() {
        return Err(Error::Shape(format!("{} states but {} POVM effects", states.len(), m.len())));
    }
    for s in states {
        ensure_same_dim("state vs POVM", s.dim(), m.dim())?;
    }
    Ok(())
}

/// `Σ_i Tr A_i M_i`.
pub fn success_probability(states: &[GeneralizedState], m: &Povm) -> Result<f64> {
    check_ensemble(states, m)?;
    states.iter().zip(m.effects()).map(|(s, e)| s.op().trace_product(e)).sum()
}

/// `Σ_i Tr A_i (I − M_i)`.
pub fn error_probability(states: &[GeneralizedState], m: &Povm) -> Result<f64> {
    check_ensemble(states, m)?;
    let mut total = 0.0;
    for (s, e) in states.iter().zip(m.effects()) {
        let miss = HermitianOperator::identity(s.dim()).sub(e)?;
        total += s.op().trace_product(&miss)?;
    }
    Ok(total)
}

/// Optimum of a commuting (diagonal) discrimination problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalOptimum {
    /// Optimal success probability, `Tr sup{A_i}`.
    pub value: f64,
    /// Maximum-likelihood measurement; ties go to the lowest index.
    pub ml_povm: Povm,
    /// Entrywise maximum of the diagonals.
    pub sup: HermitianOperator,
}

pub fn classical_optimal(states: &[GeneralizedState]) -> Result<ClassicalOptimum> {
    let Some(first) = states.first() else {
        return Err(Error::InvalidOperand("classical discrimination needs at least one state".into()));
    };
    let dim = first.dim();
    let tol = Tolerances::DEFAULT.herm;
    for s in states {
        ensure_same_dim("classical discrimination", dim, s.dim())?;
        let off = s.hermitian().matrix().max_off_diagonal();
        if off > tol {
            return Err(Error::NonDiagonal(format!("state {} has off-diagonal entry of size {off:e}", s.label())));
        }
    }
    let diagonals: Vec<Vec<f64>> = states
        .iter()
        .map(|s| s.hermitian().matrix().diagonal().iter().map(|z| z.re).collect())
        .collect();

    let mut sup = vec![0.0; dim];
    let mut winner = vec![0usize; dim];
    for w in 0..dim {
        let mut best = 0;
        for (i, d) in diagonals.iter().enumerate() {
            if d[w] > diagonals[best][w] {
                best = i;
            }
        }
        winner[w] = best;
        sup[w] = diagonals[best][w];
    }
    let effects = (0..states.len())
        .map(|i| {
            let d: Vec<f64> = winner.iter().map(|&b| if b == i { 1.0 } else { 0.0 }).collect();
            PsdOperator::from_real_diagonal(&d)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassicalOptimum {
        value: sup.iter().sum(),
        ml_povm: Povm::assume(effects),
        sup: HermitianOperator::from_real_diagonal(&sup)?,
    })
}

/// Minimal error for two generalized states and the test attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryOptimum {
    /// `½ Tr(A₁ + A₂ − |A₁ − A₂|)`.
    pub value: f64,
    /// `{T, I − T}` with `T = {A₁ − A₂ > 0}`.
    pub test: Povm,
}

pub fn binary_optimal_error(a1: &GeneralizedState, a2: &GeneralizedState) -> Result<BinaryOptimum> {
    ensure_same_dim("binary discrimination", a1.dim(), a2.dim())?;
    let diff = a1.hermitian().sub(a2.hermitian())?;
    let value = binary_error_value(a1.op(), a2.op())?;
    let (strict, _) = positive_part_projectors(&diff);
    let t = strict.into_psd();
    let complement = PsdOperator::new(HermitianOperator::identity(a1.dim()).sub(&t)?)?;
    Ok(BinaryOptimum { value, test: Povm::assume(vec![t, complement]) })
}

/// Value part of [`binary_optimal_error`], for arbitrary PSD operands.
pub fn binary_error_value(a: &PsdOperator, b: &PsdOperator) -> Result<f64> {
    ensure_same_dim("binary discrimination", a.dim(), b.dim())?;
    let diff = a.hermitian().sub(b.hermitian())?;
    Ok(0.5 * (a.trace() + b.trace() - trace_norm(&diff)))
}

/// `(A₁ + A₂ + |A₁ − A₂|) / 2`, the trace-minimal PSD upper bound of the pair.
pub fn hybrid_sup_binary(a1: &GeneralizedState, a2: &GeneralizedState) -> Result<PsdOperator> {
    ensure_same_dim("hybrid supremum", a1.dim(), a2.dim())?;
    let sum = a1.hermitian().add(a2.hermitian())?;
    let modulus = abs(&a1.hermitian().sub(a2.hermitian())?);
    PsdOperator::new(sum.add(&modulus)?.scale(0.5))
}

/// Result of checking `A_i ≤ Σ_k A_k M_k` for every `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalityCertificate {
    pub holds: bool,
    /// `min_i λ_min(Σ_k A_k M_k − A_i)`; nonnegative up to `tol` when optimal.
    pub min_gap: f64,
    /// Violations of the necessary condition `M_i (A_i − A_k) M_k = 0`.
    pub warnings: Vec<String>,
}

pub fn verify_optimality(states: &[GeneralizedState], m: &Povm, tol: f64) -> Result<OptimalityCertificate> {
    check_ensemble(states, m)?;
    let dim = m.dim();
    let mut acc = CMatrix::zeros(dim);
    for (s, e) in states.iter().zip(m.effects()) {
        acc = &acc + &(s.hermitian().matrix() * e.matrix());
    }
    // The product sum is Hermitian only up to rounding.
    let upper = HermitianOperator::symmetrized(acc);
    let mut min_gap = f64::INFINITY;
    for s in states {
        min_gap = min_gap.min(upper.sub(s.hermitian())?.min_eigenvalue());
    }
    let holds = min_gap >= -tol;

    let mut warnings = Vec::new();
    if holds {
        let scale = 1.0 + states.iter().map(|s| s.trace()).sum::<f64>();
        for (i, (si, mi)) in states.iter().zip(m.effects()).enumerate() {
            for (k, (sk, mk)) in states.iter().zip(m.effects()).enumerate() {
                if i == k {
                    continue;
                }
                let d = si.hermitian().sub(sk.hermitian())?;
                let r = &(mi.matrix() * d.matrix()) * mk.matrix();
                let size = r.frobenius_norm();
                if size > tol * scale {
                    warnings.push(format!("M_{i} (A_{i} - A_{k}) M_{k} has Frobenius norm {size:e}"));
                }
            }
        }
    }
    Ok(OptimalityCertificate { holds, min_gap, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state(label: &str, d: &[f64]) -> GeneralizedState {
        GeneralizedState::from_diagonal(label, d).unwrap()
    }

    fn example() -> Vec<GeneralizedState> {
        vec![state("A1", &[3.0, 1.0, 2.0]), state("A2", &[1.0, 2.0, 2.0]), state("A3", &[2.0, 0.0, 1.0])]
    }

    fn pure(weight: f64, v: &[Complex64]) -> GeneralizedState {
        GeneralizedState::new("pure", PsdOperator::rank_one(v).scale(weight).unwrap()).unwrap()
    }

    #[test]
    fn classical_example_value_seven() {
        let opt = classical_optimal(&example()).unwrap();
        assert!((opt.value - 7.0).abs() <= 1e-12);
        assert_eq!(opt.sup.matrix(), &CMatrix::from_diagonal(&[3.0, 2.0, 2.0]));
        let ml = opt.ml_povm.effects();
        assert_eq!(ml[0].matrix(), &CMatrix::from_diagonal(&[1.0, 0.0, 1.0]));
        assert_eq!(ml[1].matrix(), &CMatrix::from_diagonal(&[0.0, 1.0, 0.0]));
        assert_eq!(ml[2].matrix(), &CMatrix::zeros(3));
        assert!((success_probability(&example(), &opt.ml_povm).unwrap() - 7.0).abs() <= 1e-12);
    }

    #[test]
    fn classical_trivial_cases() {
        let a = state("A", &[0.2, 0.5]);
        let opt = classical_optimal(std::slice::from_ref(&a)).unwrap();
        assert!((opt.value - 0.7).abs() < 1e-15);
        assert_eq!(opt.ml_povm.effects()[0].matrix(), &CMatrix::identity(2));
        let opt = classical_optimal(&[state("p", &[0.3, 0.0]), state("q", &[0.0, 0.6])]).unwrap();
        assert!((opt.value - 0.9).abs() < 1e-15);
    }

    #[test]
    fn classical_rejects_off_diagonal() {
        let x = PsdOperator::from_matrix(CMatrix::from_real_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap()).unwrap();
        let s = GeneralizedState::new("x", x).unwrap();
        assert!(matches!(classical_optimal(&[s]), Err(Error::NonDiagonal(_))));
    }

    #[test]
    fn example_certificate() {
        let states = example();
        let opt = classical_optimal(&states).unwrap();
        let cert = verify_optimality(&states, &opt.ml_povm, 1e-10).unwrap();
        assert!(cert.holds);
        assert!(cert.warnings.is_empty());

        let mut swapped = opt.ml_povm.effects().to_vec();
        swapped.swap(0, 2);
        let cert = verify_optimality(&states, &Povm::new(swapped).unwrap(), 1e-10).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn born_rule_examples() {
        let s = 0.6f64.sqrt();
        let psi = [c(s, 0.0), c(0.0, 0.8f64.sqrt() * 0.5f64.sqrt())];
        let rho = pure(1.0, &psi);
        let probs = born_probabilities(&rho, &Povm::computational_basis(2)).unwrap();
        assert!((probs[0] - 0.6).abs() < 1e-15 && (probs[1] - 0.4).abs() < 1e-15);

        let mixed = state("I/2", &[0.5, 0.5]);
        assert_eq!(born_probabilities(&mixed, &Povm::computational_basis(2)).unwrap(), vec![0.5, 0.5]);
        let one = Povm::new(vec![PsdOperator::identity(2)]).unwrap();
        assert_eq!(born_probabilities(&mixed, &one).unwrap(), vec![1.0]);
        assert!(matches!(born_probabilities(&state("w", &[0.5, 0.2]), &one), Err(Error::InvalidState(_))));
    }

    #[test]
    fn success_with_trivial_measurement() {
        let states = example();
        let m = Povm::new(vec![PsdOperator::identity(3), PsdOperator::zeros(3), PsdOperator::zeros(3)]).unwrap();
        assert_eq!(success_probability(&states, &m).unwrap(), 6.0);
        assert!(matches!(success_probability(&states[..2], &m), Err(Error::Shape(_))));
    }

    #[test]
    fn binary_examples() {
        let a = state("a", &[0.4, 0.0]);
        let b = state("b", &[0.0, 0.6]);
        assert_eq!(binary_optimal_error(&a, &b).unwrap().value, 0.0);

        let half = state("h", &[0.25, 0.25]);
        assert!((binary_optimal_error(&half, &half).unwrap().value - 0.5).abs() < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let zero = pure(0.5, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let plus = pure(0.5, &[c(s, 0.0), c(s, 0.0)]);
        let opt = binary_optimal_error(&zero, &plus).unwrap();
        let expected = (2.0 - 2f64.sqrt()) / 4.0;
        assert!((opt.value - expected).abs() < 1e-15);
        let via_test = error_probability(&[zero.clone(), plus.clone()], &opt.test).unwrap();
        assert!((via_test - expected).abs() < 1e-10);
        assert!(verify_optimality(&[zero, plus], &opt.test, 1e-10).unwrap().holds);
    }

    #[test]
    fn hybrid_sup_examples() {
        let s = hybrid_sup_binary(&state("a", &[1.0, 2.0]), &state("b", &[2.0, 1.0])).unwrap();
        assert!((s.matrix() - &CMatrix::from_diagonal(&[2.0, 2.0])).frobenius_norm() < 1e-14);
        let a = state("a", &[0.3, 0.1]);
        let s = hybrid_sup_binary(&a, &a).unwrap();
        assert!((s.matrix() - a.hermitian().matrix()).frobenius_norm() < 1e-15);
        let p = state("p", &[1.0, 0.0, 0.0]);
        let q = state("q", &[0.0, 0.0, 1.0]);
        let s = hybrid_sup_binary(&p, &q).unwrap();
        assert!((s.matrix() - &CMatrix::from_diagonal(&[1.0, 0.0, 1.0])).frobenius_norm() < 1e-15);
    }
}
