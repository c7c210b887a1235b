use super::single::binary_error_value;
use super::state::GeneralizedState;
use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::PsdOperator;
use crate::optimize::grid_then_golden;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorstCase {
    /// `min_T max_i [Tr A(I − T) + Tr B_i T]`.
    pub value: f64,
    /// Mixture weight on `B₁` of the least favourable alternative.
    pub mu_star: f64,
}

/// Optimal worst-case error against a two-element alternative set.
///
/// By minimax duality the min over tests of the worst case equals
/// `max_μ P_e*(A, μB₁ + (1 − μ)B₂)`, a concave function of `μ` that is
/// maximized by grid scan plus golden-section search.
pub fn worst_case_composite_error(a: &GeneralizedState, bs: &[GeneralizedState]) -> Result<WorstCase> {
    let [b1, b2] = bs else {
        return Err(Error::Shape(format!("worst-case error needs exactly 2 alternatives, got {}", bs.len())));
    };
    ensure_same_dim("worst-case error", a.dim(), b1.dim())?;
    ensure_same_dim("worst-case error", a.dim(), b2.dim())?;
    let mixture = |mu: f64| -> PsdOperator {
        let m = b1.hermitian().scale(mu).add(&b2.hermitian().scale(1.0 - mu)).expect("dimensions checked");
        PsdOperator::new(m).unwrap_or_else(|_| unreachable!("convex mixture of PSD operators"))
    };
    let best = grid_then_golden(
        |mu| -binary_error_value(a.op(), &mixture(mu)).expect("dimensions checked"),
        0.0,
        1.0,
        64,
        1e-10,
    );
    Ok(WorstCase { value: -best.fx, mu_star: best.x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrimination::binary_optimal_error;

    fn state(d: &[f64]) -> GeneralizedState {
        GeneralizedState::from_diagonal("s", d).unwrap()
    }

    #[test]
    fn equal_alternatives_reduce_to_binary() {
        let a = state(&[0.4, 0.1]);
        let b = state(&[0.2, 0.3]);
        let w = worst_case_composite_error(&a, &[b.clone(), b.clone()]).unwrap();
        assert!((w.value - binary_optimal_error(&a, &b).unwrap().value).abs() < 1e-14);
    }

    #[test]
    fn orthogonal_alternatives() {
        let a = state(&[0.5, 0.0, 0.0]);
        let w = worst_case_composite_error(&a, &[state(&[0.0, 0.2, 0.0]), state(&[0.0, 0.0, 0.3])]).unwrap();
        assert_eq!(w.value, 0.0);
    }

    #[test]
    fn needs_two_alternatives() {
        let a = state(&[0.5, 0.5]);
        let err = worst_case_composite_error(&a, std::slice::from_ref(&a)).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }
}
