//! Brute-force ground truth: explicit Kronecker powers, dense trace norms
//! and grid searches. Deliberately simple; every reduced or optimized
//! computation in the crate is checked against these at small sizes.

use num_complex::Complex64;

use crate::composite::SpecialFamily;
use crate::discrimination::{ChernoffObjective, GeneralizedState};
use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::{trace_norm, CMatrix, HermitianOperator, PsdOperator};

/// Environment variable overriding [`OracleBudget::max_dim`].
pub const MAXDIM_ENV: &str = "HYPTEST_ORACLE_MAXDIM";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest matrix dimension an oracle may materialize.
    pub max_dim: usize,
    /// Largest number of grid samples.
    pub max_grid: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_dim: 4096, max_grid: 10_000 }
    }
}

impl OracleBudget {
    pub fn new(max_dim: usize, max_grid: usize) -> Result<Self> {
        if max_dim == 0 || max_grid == 0 {
            return Err(Error::Domain("oracle budget must be positive".into()));
        }
        Ok(OracleBudget { max_dim, max_grid })
    }

    /// Default budget with `max_dim` taken from `HYPTEST_ORACLE_MAXDIM` when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(raw) = std::env::var(MAXDIM_ENV) {
            budget.max_dim = raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Parse(format!("{MAXDIM_ENV}={raw:?} is not a positive integer")))?;
        }
        Ok(budget)
    }

    /// Whether `base^n` fits in the dimension budget.
    pub fn allows(&self, base: usize, n: u32) -> bool {
        base.checked_pow(n).is_some_and(|d| d <= self.max_dim)
    }
}

/// `½ (3 − ‖ρ^{⊗n} − σ₁^{⊗n} − σ₂^{⊗n}‖₁)` from the dense `dimⁿ` matrix.
pub fn tensor_error_bruteforce(f: &SpecialFamily, n: u32, budget: &OracleBudget) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("number of copies must be at least 1".into()));
    }
    let d = f.dim();
    if !budget.allows(d, n) {
        return Err(Error::Resource(format!("oracle dimension {d}^{n} exceeds budget {}", budget.max_dim)));
    }
    let big = d.pow(n);
    let rho = f.rho();
    let sigma = f.sigma1();
    let (rho, sigma) = (rho.matrix(), sigma.matrix());
    let psi = f.psi();

    // Base-d digits of every tensor index, most significant first.
    let digits: Vec<Vec<usize>> = (0..big)
        .map(|mut idx| {
            let mut out = vec![0; n as usize];
            for slot in out.iter_mut().rev() {
                *slot = idx % d;
                idx /= d;
            }
            out
        })
        .collect();
    let psi_n: Vec<Complex64> = digits.iter().map(|ds| ds.iter().map(|&k| psi[k]).product()).collect();

    let one = Complex64::new(1.0, 0.0);
    let x = CMatrix::from_fn(big, |i, j| {
        let (di, dj) = (&digits[i], &digits[j]);
        let mut a = one;
        let mut b = one;
        for (&u, &v) in di.iter().zip(dj) {
            a *= rho[(u, v)];
            b *= sigma[(u, v)];
        }
        a - b - psi_n[i] * psi_n[j].conj()
    });
    let x = HermitianOperator::symmetrized(x);
    Ok(0.5 * (3.0 - trace_norm(&x)))
}

/// `−log min_k Tr A^{α_k} B^{1−α_k}` over `grid` equally spaced `α_k ∈ [0, 1]`.
///
/// Since the grid minimum of the objective is never below the continuous
/// minimum, the result never exceeds the true divergence.
pub fn chernoff_bruteforce(a: &PsdOperator, b: &PsdOperator, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::Domain(format!("Chernoff grid needs at least 2 points, got {grid}")));
    }
    let g = ChernoffObjective::new(a, b)?;
    let last = (grid - 1) as f64;
    let best = (0..grid).map(|k| g.eval(k as f64 / last)).fold(f64::INFINITY, f64::min);
    Ok(-best.max(0.0).ln())
}

/// Worst-case error `min_T max_i [Tr A(I − T) + Tr B_i T]` for qubits by
/// direct search over tests `T = x|n><n| + y|m><m|`.
///
/// The Bloch direction `n` runs over a `⌈√grid⌉ × ⌈grid/√grid⌉` grid in
/// `(θ, φ)` followed by two zoomed passes around the best cell. For a fixed
/// direction the objective is the maximum of two linear functions of
/// `(x, y) ∈ [0, 1]²`, minimized exactly at a vertex of its linearity
/// regions.
pub fn worst_case_grid(a: &GeneralizedState, b1: &GeneralizedState, b2: &GeneralizedState, grid: usize) -> Result<f64> {
    for s in [a, b1, b2] {
        if s.dim() != 2 {
            return Err(Error::Shape(format!("worst-case grid oracle is for dimension 2, got {}", s.dim())));
        }
    }
    ensure_same_dim("worst-case grid", b1.dim(), b2.dim())?;
    let grid = grid.max(4);
    let d1 = b1.hermitian().sub(a.hermitian())?;
    let d2 = b2.hermitian().sub(a.hermitian())?;
    let base = a.trace();
    let eval = |theta: f64, phi: f64| base + min_over_spectrum(d1.matrix(), d2.matrix(), theta, phi);

    let n_theta = (grid as f64).sqrt().ceil() as usize;
    let n_phi = grid.div_ceil(n_theta);
    let (mut lo_t, mut hi_t) = (0.0, std::f64::consts::PI);
    let (mut lo_p, mut hi_p) = (0.0, 2.0 * std::f64::consts::PI);
    let mut best = f64::INFINITY;
    let mut best_at = (0.0, 0.0);
    for _level in 0..3 {
        let step_t = (hi_t - lo_t) / (n_theta - 1) as f64;
        let step_p = (hi_p - lo_p) / n_phi as f64;
        for i in 0..n_theta {
            let theta = lo_t + step_t * i as f64;
            for j in 0..=n_phi {
                let phi = lo_p + step_p * j as f64;
                let v = eval(theta, phi);
                if v < best {
                    best = v;
                    best_at = (theta, phi);
                }
            }
        }
        lo_t = (best_at.0 - step_t).max(0.0);
        hi_t = (best_at.0 + step_t).min(std::f64::consts::PI);
        lo_p = best_at.1 - step_p;
        hi_p = best_at.1 + step_p;
    }
    Ok(best)
}

fn min_over_spectrum(d1: &CMatrix, d2: &CMatrix, theta: f64, phi: f64) -> f64 {
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let e = Complex64::from_polar(1.0, phi);
    let n = [Complex64::new(c, 0.0), e * s];
    let m = [-e.conj() * s, Complex64::new(c, 0.0)];
    let quad = |op: &CMatrix, v: &[Complex64; 2]| -> f64 {
        let w = op.apply(v);
        (v[0].conj() * w[0] + v[1].conj() * w[1]).re
    };
    let (c1, e1) = (quad(d1, &n), quad(d1, &m));
    let (c2, e2) = (quad(d2, &n), quad(d2, &m));
    let f = |x: f64, y: f64| (x * c1 + y * e1).max(x * c2 + y * e2);

    let mut best = f(0.0, 0.0).min(f(1.0, 0.0)).min(f(0.0, 1.0)).min(f(1.0, 1.0));
    // Where the two linear pieces cross the box boundary.
    let (dc, de) = (c1 - c2, e1 - e2);
    if de != 0.0 {
        let y = -dc / de;
        if (0.0..=1.0).contains(&y) {
            best = best.min(f(1.0, y));
        }
    }
    if dc != 0.0 {
        let x = -de / dc;
        if (0.0..=1.0).contains(&x) {
            best = best.min(f(x, 1.0));
        }
    }
    best
}
