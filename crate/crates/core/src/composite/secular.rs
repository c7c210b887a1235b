//! Eigenvalues of a diagonal matrix plus a positive rank-one term,
//! `D + φφᵀ`, in double-double arithmetic.
//!
//! Each eigenvalue is found as `d_k + μ` where `μ` solves the secular
//! equation `1 + Σ_j w_j / (d_j − d_k − μ) = 0` with `w_j = φ_j²`. Working
//! with the shift `μ` relative to the pole keeps tiny gaps between an
//! eigenvalue and its pole free of cancellation. Poles with zero weight and
//! repeated poles are deflated exactly.

use crate::dd::DoubleDouble as DD;

#[derive(Clone, Debug)]
pub struct RankOneUpdate {
    poles: Vec<DD>,
    weights: Vec<DD>,
}

/// An eigenvalue written as `pole + shift` with `shift ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecularRoot {
    pub pole: DD,
    pub shift: DD,
}

impl SecularRoot {
    pub fn value(&self) -> DD {
        self.pole + self.shift
    }
}

impl RankOneUpdate {
    /// `weights` must be nonnegative; negative entries are treated as zero.
    pub fn new(poles: Vec<DD>, weights: Vec<DD>) -> Self {
        assert_eq!(poles.len(), weights.len(), "one weight per pole");
        let weights = weights.into_iter().map(|w| if w.is_sign_negative() { DD::ZERO } else { w }).collect();
        RankOneUpdate { poles, weights }
    }

    pub fn dim(&self) -> usize {
        self.poles.len()
    }

    /// All eigenvalues in ascending order.
    pub fn roots(&self) -> Vec<SecularRoot> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| self.poles[a].partial_cmp(&self.poles[b]).expect("finite poles"));

        let mut roots = Vec::with_capacity(self.dim());
        let mut active: Vec<(DD, DD)> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let pole = self.poles[order[i]];
            let mut j = i;
            let mut weight = DD::ZERO;
            while j < order.len() && self.poles[order[j]] == pole {
                weight += self.weights[order[j]];
                j += 1;
            }
            // A repeated pole keeps all but one copy as an exact eigenvalue.
            for _ in i..j - 1 {
                roots.push(SecularRoot { pole, shift: DD::ZERO });
            }
            if weight.is_zero() {
                roots.push(SecularRoot { pole, shift: DD::ZERO });
            } else {
                active.push((pole, weight));
            }
            i = j;
        }

        let total: DD = active.iter().map(|&(_, w)| w).sum();
        for k in 0..active.len() {
            let upper = if k + 1 < active.len() { active[k + 1].0 - active[k].0 } else { total };
            let shift = solve_shift(&active, k, upper);
            roots.push(SecularRoot { pole: active[k].0, shift });
        }
        roots.sort_by(|a, b| a.value().partial_cmp(&b.value()).expect("finite roots"));
        roots
    }

    /// Coefficients `a_0 .. a_{m−1}` of the monic characteristic polynomial
    /// `det(λI − D − φφᵀ) = Π_i (λ − d_i) − Σ_i w_i Π_{j≠i} (λ − d_j)`.
    pub fn char_poly(&self) -> Vec<DD> {
        let m = self.dim();
        let mut full = vec![DD::ONE];
        for &d in &self.poles {
            full = mul_linear(&full, d);
        }
        let mut coeffs: Vec<DD> = full[..m].to_vec();
        for i in 0..m {
            let mut partial = vec![DD::ONE];
            for (j, &d) in self.poles.iter().enumerate() {
                if j != i {
                    partial = mul_linear(&partial, d);
                }
            }
            for (c, p) in coeffs.iter_mut().zip(&partial) {
                *c -= self.weights[i] * *p;
            }
        }
        coeffs
    }
}

/// Multiplies a polynomial (coefficients low to high) by `(λ − d)`.
fn mul_linear(poly: &[DD], d: DD) -> Vec<DD> {
    let mut out = vec![DD::ZERO; poly.len() + 1];
    for (k, &c) in poly.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * d;
    }
    out
}

/// Root `μ ∈ (0, upper)` of `h(μ) = 1 + Σ_j w_j / (δ_j − μ)` with
/// `δ_j = d_j − d_k`. `h` increases from −∞ to +∞ on the interval.
fn solve_shift(active: &[(DD, DD)], k: usize, upper: DD) -> DD {
    let origin = active[k].0;
    let terms: Vec<(DD, DD)> = active.iter().map(|&(d, w)| (d - origin, w)).collect();
    let h = |mu: DD| -> DD {
        let mut acc = DD::ONE;
        for &(delta, w) in &terms {
            acc += w / (delta - mu);
        }
        acc
    };
    let dh = |mu: DD| -> DD {
        let mut acc = DD::ZERO;
        for &(delta, w) in &terms {
            let gap = delta - mu;
            acc += w / (gap * gap);
        }
        acc
    };
    let negative = |mu: f64| h(DD::from(mu)).is_sign_negative();

    let mut lo = f64::MIN_POSITIVE;
    let initial_hi = upper.to_f64();
    let mut hi = initial_hi;
    if !negative(lo) {
        return DD::ZERO;
    }
    // Geometric bisection reaches the right order of magnitude quickly,
    // arithmetic bisection then resolves the last bits.
    while hi > 4.0 * lo {
        let mid = lo.sqrt() * hi.sqrt();
        if negative(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if negative(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Safeguarded Newton in double-double: steps that leave the bracket
    // fall back to bisection.
    // The rounded upper end may cut off a root just below the exact one.
    let (mut a, mut b) = (DD::from(lo), if hi == initial_hi { upper } else { DD::from(hi) });
    let mut mu = DD::from(0.5 * (lo + hi));
    for _ in 0..40 {
        let value = h(mu);
        if value.is_zero() {
            break;
        }
        if value.is_sign_negative() {
            a = mu;
        } else {
            b = mu;
        }
        let slope = dh(mu);
        let mut next = if slope.is_zero() { (a + b) * 0.5 } else { mu - value / slope };
        // A step onto an endpoint means the root sits within rounding of it.
        if !(next >= a && next <= b) {
            next = (a + b) * 0.5;
        }
        let moved = (next - mu).abs().to_f64();
        mu = next;
        if moved <= 1e-32 * mu.to_f64() || (b - a).to_f64() <= 1e-31 * mu.to_f64() {
            break;
        }
    }
    mu
}
