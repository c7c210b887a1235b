//! Numerical check that the composite error exponent equals the larger of
//! the two pairwise exponents for a given parameter set.
//!
//! At each probe `n` the report records the sandwich
//!
//! `−max_i C_i ≤ (1/n) log max_i e_i(n) ≤ (1/n) log P_e(n)`,
//!
//! where `C₁ = −log(R·min{p,q})` and `C₂ = −log(pt)` are the pairwise
//! Chernoff divergences and `P_e(n)` is the error against the sum of the
//! alternatives, plus the relative remainder of the leading-order trace
//! norm, which must shrink as `n` grows.

use super::exact::{composite_sum_error, conjectured_exponent, pairwise_errors, remainder_ratio, NormBranch};
use super::family::canonical_realization;
use super::params::FamilyParams;
use crate::discrimination::chernoff_divergence;
use crate::error::{Error, Result};
use crate::oracle::{tensor_error_bruteforce, OracleBudget};

/// Slack on `log`-scale comparisons that hold exactly in real arithmetic.
const LOG_SLACK: f64 = 1e-12;
/// Slack on the exponent lower bound.
const EXPONENT_SLACK: f64 = 1e-9;
/// Reduced and brute-force errors must agree to this.
pub const ORACLE_TOL: f64 = 1e-9;
/// Numeric and closed-form Chernoff divergences must agree to this.
pub const CHERNOFF_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub n: u32,
    /// `log e₁(n)`, `log e₂(n)`.
    pub pairwise_log: [f64; 2],
    /// `(1/n) log max_i e_i(n)`.
    pub lower: f64,
    /// `(1/n) log P_e(n)`.
    pub upper: f64,
    /// `log P_e(n + 1) − log P_e(n)`.
    pub slope: Option<f64>,
    pub remainder_ratio: f64,
    pub precision_loss: bool,
    pub sandwich_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleAgreement {
    pub n: u32,
    pub reduced: f64,
    pub bruteforce: f64,
}

impl OracleAgreement {
    pub fn diff(&self) -> f64 {
        (self.reduced - self.bruteforce).abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub dim: usize,
    pub agreements: Vec<OracleAgreement>,
    /// Probes whose tensor power exceeds the budget.
    pub skipped: Vec<u32>,
    /// `chernoff_divergence(ρ, σ₁)`, `chernoff_divergence(ρ, σ₂)`.
    pub chernoff_numeric: [f64; 2],
    pub chernoff_ok: bool,
}

impl OracleReport {
    pub fn max_diff(&self) -> f64 {
        self.agreements.iter().map(OracleAgreement::diff).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.chernoff_ok && self.max_diff() <= ORACLE_TOL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub params: FamilyParams,
    pub branch: NormBranch,
    /// Closed-form `C₁`, `C₂`.
    pub chernoff: [f64; 2],
    pub conjectured: f64,
    pub probes: Vec<ProbeReport>,
    /// Remainder ratios strictly decrease across probes (or stay at zero).
    pub remainder_decreasing: bool,
    /// Slope at the last probe minus the conjectured exponent.
    pub final_gap: Option<f64>,
    pub oracle: Option<OracleReport>,
}

impl TheoremReport {
    pub fn sandwich_ok(&self) -> bool {
        self.probes.iter().all(|p| p.sandwich_ok)
    }

    pub fn passed(&self) -> bool {
        self.sandwich_ok() && self.remainder_decreasing && self.oracle.as_ref().is_none_or(OracleReport::passed)
    }
}

/// Probes are sorted and deduplicated. With an oracle budget the canonical
/// realization is built (failing with `InfeasibleParams` if it does not
/// exist) and checked at every probe that fits.
pub fn verify_theorem(params: &FamilyParams, probes: &[u32], oracle: Option<&OracleBudget>) -> Result<TheoremReport> {
    if probes.is_empty() {
        return Err(Error::Domain("at least one probe is required".into()));
    }
    if probes.contains(&0) {
        return Err(Error::Domain("number of copies must be at least 1".into()));
    }
    let mut ns = probes.to_vec();
    ns.sort_unstable();
    ns.dedup();

    let chernoff = [-params.projection_base().ln(), -params.pure_base().ln()];
    let reports: Vec<ProbeReport> = ns.iter().map(|&n| probe(params, n, chernoff)).collect();
    let remainder_decreasing = reports.windows(2).all(|w| {
        let (a, b) = (w[0].remainder_ratio, w[1].remainder_ratio);
        b < a || (a == 0.0 && b == 0.0)
    });
    let conjectured = conjectured_exponent(params);
    let final_gap = reports.last().and_then(|p| p.slope).map(|s| s - conjectured);
    let oracle = oracle.map(|budget| oracle_report(params, &ns, budget, chernoff)).transpose()?;
    Ok(TheoremReport {
        params: *params,
        branch: NormBranch::of(params),
        chernoff,
        conjectured,
        probes: reports,
        remainder_decreasing,
        final_gap,
        oracle,
    })
}

fn probe(params: &FamilyParams, n: u32, chernoff: [f64; 2]) -> ProbeReport {
    let nf = f64::from(n);
    let composite = composite_sum_error(params, n);
    let next = composite_sum_error(params, n + 1);
    let pair = pairwise_errors(params, n);
    let pairwise_log = [pair[0].ln(), pair[1].ln()];
    let lower = pair[0].max(pair[1]).ln() / nf;
    let upper = composite.ln() / nf;
    let slope = (!composite.value.is_zero() && !next.value.is_zero()).then(|| (next.value / composite.value).ln());

    let largest = chernoff[0].max(chernoff[1]);
    let ordered = lower == f64::NEG_INFINITY || lower <= upper + LOG_SLACK;
    let above_exponent = lower == f64::NEG_INFINITY || -largest - EXPONENT_SLACK <= lower;
    let chernoff_bounds = (0..2).all(|i| pairwise_log[i] <= -nf * chernoff[i] + LOG_SLACK);
    ProbeReport {
        n,
        pairwise_log,
        lower,
        upper,
        slope,
        remainder_ratio: remainder_ratio(params, n),
        precision_loss: composite.precision_loss,
        sandwich_ok: ordered && above_exponent && chernoff_bounds,
    }
}

fn oracle_report(params: &FamilyParams, ns: &[u32], budget: &OracleBudget, chernoff: [f64; 2]) -> Result<OracleReport> {
    let family = canonical_realization(params)?;
    let dim = family.dim();
    let mut agreements = Vec::new();
    let mut skipped = Vec::new();
    for &n in ns {
        if budget.allows(dim, n) {
            agreements.push(OracleAgreement {
                n,
                reduced: composite_sum_error(params, n).to_f64(),
                bruteforce: tensor_error_bruteforce(&family, n, budget)?,
            });
        } else {
            skipped.push(n);
        }
    }
    let rho = family.rho();
    let numeric = [
        chernoff_divergence(&rho, &family.sigma1())?.value,
        chernoff_divergence(&rho, &family.sigma2())?.value,
    ];
    let chernoff_ok = (0..2).all(|i| {
        if chernoff[i].is_infinite() {
            numeric[i].is_infinite() || numeric[i] > -f64::EPSILON.ln()
        } else {
            (numeric[i] - chernoff[i]).abs() <= CHERNOFF_TOL
        }
    });
    Ok(OracleReport { dim, agreements, skipped, chernoff_numeric: numeric, chernoff_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ref1() -> FamilyParams {
        FamilyParams::new(0.5, 0.5, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1).unwrap()
    }

    fn ref2() -> FamilyParams {
        FamilyParams::new(0.5, 0.25, 0.9, 0.15, 0.1, 1).unwrap()
    }

    #[test]
    fn reference_reports_pass() {
        let report = verify_theorem(&ref1(), &[80, 10, 40, 20], None).unwrap();
        assert_eq!(report.probes.iter().map(|p| p.n).collect::<Vec<_>>(), vec![10, 20, 40, 80]);
        assert!(report.passed());
        assert_eq!(report.branch, NormBranch::FourByFourBelow);
        assert!(report.final_gap.unwrap().abs() < 1e-6);

        let report = verify_theorem(&ref2(), &[10, 20, 40, 80], None).unwrap();
        assert!(report.passed());
        assert_eq!(report.branch, NormBranch::FourByFourAbove);
        assert!(report.probes[3].remainder_ratio <= 0.05);
    }

    #[test]
    fn oracle_section() {
        let budget = OracleBudget::new(256, 100).unwrap();
        let report = verify_theorem(&ref1(), &[2, 3, 4, 5], Some(&budget)).unwrap();
        let oracle = report.oracle.as_ref().unwrap();
        assert_eq!(oracle.dim, 4);
        assert_eq!(oracle.agreements.len(), 3);
        assert_eq!(oracle.skipped, vec![5]);
        assert!(oracle.passed(), "{oracle:?}");
        assert!(report.passed(), "{report:#?}");

        // The remainder only settles into decay after the first few copies.
        let early = verify_theorem(&ref1(), &[1, 2], None).unwrap();
        assert!(early.sandwich_ok());
        assert!(!early.remainder_decreasing);
    }

    #[test]
    fn infeasible_realization_is_reported() {
        // r > 0 needs a joint overlap, which R = 0 rules out.
        let params = FamilyParams::new(0.5, 0.5, 0.5, 0.5, 0.2, 0).unwrap();
        assert!(verify_theorem(&params, &[1], None).is_ok());
        let budget = OracleBudget::default();
        assert!(matches!(verify_theorem(&params, &[1], Some(&budget)), Err(Error::InfeasibleParams(_))));
    }

    #[test]
    fn rejects_empty_or_zero_probes() {
        assert!(matches!(verify_theorem(&ref1(), &[], None), Err(Error::Domain(_))));
        assert!(matches!(verify_theorem(&ref1(), &[0, 4], None), Err(Error::Domain(_))));
    }
}
