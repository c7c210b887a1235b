//! Finite-`n` error exponents of the composite problem.

use rayon::prelude::*;

use super::exact::{composite_sum_error, conjectured_exponent, CompositeError};
use super::params::FamilyParams;
use crate::error::{Error, Result};

/// Copy numbers evaluated per parallel batch before checking for a flag.
const BATCH: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEntry {
    pub n: u32,
    /// `log P_e(n)`.
    pub log_error: f64,
    /// `(1/n) log P_e(n)`.
    pub one_over_n_log: f64,
    /// `(log P_e(n + step) − log P_e(n)) / step`; `None` when either error
    /// is zero.
    pub slope: Option<f64>,
    pub precision_loss: bool,
    /// Whether the slope also used a flagged value at `n + step`.
    pub slope_precision_loss: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentSeries {
    pub step: u32,
    /// Ascending in `n`.
    pub entries: Vec<SeriesEntry>,
    /// Last slope before the first flagged value, at `n` or `n + step`.
    pub estimate: Option<f64>,
    pub conjectured: f64,
}

impl ExponentSeries {
    pub fn first_flagged(&self) -> Option<u32> {
        self.entries.iter().find(|e| e.precision_loss).map(|e| e.n)
    }
}

/// `n = 1, 1 + step, …, ≤ n_max` on the current rayon pool, stopping after
/// the first flagged entry.
pub fn exponent_series(params: &FamilyParams, n_max: u32, step: u32) -> Result<ExponentSeries> {
    let ns = grid(n_max, step)?;
    Ok(build(params, &ns, step, true))
}

/// Every `n` in `ns` (sorted, deduplicated), flagged entries included, on
/// `jobs` worker threads (`0` for the rayon default).
pub fn exponent_series_at(params: &FamilyParams, ns: &[u32], step: u32, jobs: usize) -> Result<ExponentSeries> {
    if step == 0 {
        return Err(Error::Domain("series step must be positive".into()));
    }
    if ns.contains(&0) {
        return Err(Error::Domain("number of copies must be at least 1".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(|| build(params, &ns, step, false)))
}

fn grid(n_max: u32, step: u32) -> Result<Vec<u32>> {
    if step == 0 {
        return Err(Error::Domain("series step must be positive".into()));
    }
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    Ok((1..=n_max).step_by(step as usize).collect())
}

fn build(params: &FamilyParams, ns: &[u32], step: u32, stop_at_flag: bool) -> ExponentSeries {
    let mut entries = Vec::with_capacity(ns.len());
    'batches: for chunk in ns.chunks(BATCH) {
        let rows: Vec<SeriesEntry> = chunk.par_iter().map(|&n| entry(params, n, step)).collect();
        for row in rows {
            let flagged = row.precision_loss;
            entries.push(row);
            if flagged && stop_at_flag {
                break 'batches;
            }
        }
    }
    let estimate = entries
        .iter()
        .take_while(|e| !e.precision_loss && !e.slope_precision_loss)
        .filter_map(|e| e.slope)
        .last();
    ExponentSeries { step, entries, estimate, conjectured: conjectured_exponent(params) }
}

fn entry(params: &FamilyParams, n: u32, step: u32) -> SeriesEntry {
    let here = composite_sum_error(params, n);
    let ahead = composite_sum_error(params, n + step);
    let log_error = here.ln();
    SeriesEntry {
        n,
        log_error,
        one_over_n_log: log_error / f64::from(n),
        slope: slope(&here, &ahead, step),
        precision_loss: here.precision_loss,
        slope_precision_loss: ahead.precision_loss,
    }
}

/// The log of the ratio, so both values keep their full relative precision.
fn slope(here: &CompositeError, ahead: &CompositeError, step: u32) -> Option<f64> {
    if here.value.is_zero() || ahead.value.is_zero() || here.value.is_sign_negative() || ahead.value.is_sign_negative() {
        return None;
    }
    Some((ahead.value / here.value).ln() / f64::from(step))
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
    fn entries_are_consistent() {
        let s = exponent_series(&ref1(), 30, 2).unwrap();
        assert_eq!(s.entries.iter().map(|e| e.n).collect::<Vec<_>>(), (1..=30).step_by(2).collect::<Vec<_>>());
        for e in &s.entries {
            let p = composite_sum_error(&ref1(), e.n).to_f64();
            assert!((e.log_error - p.ln()).abs() < 1e-13);
            assert!((e.one_over_n_log * f64::from(e.n) - e.log_error).abs() < 1e-12);
            let ahead = composite_sum_error(&ref1(), e.n + 2).to_f64();
            assert!((e.slope.unwrap() - (ahead.ln() - p.ln()) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_estimates() {
        let s = exponent_series(&ref1(), 200, 1).unwrap();
        assert!((s.estimate.unwrap() - 0.5f64.ln()).abs() < 1e-6);
        assert!((s.conjectured - 0.5f64.ln()).abs() < 1e-15);
        let flagged = s.first_flagged().expect("cancellation sets in before n = 200");
        assert_eq!(s.entries.last().unwrap().n, flagged);

        let s = exponent_series(&ref2(), 60, 1).unwrap();
        assert!((s.estimate.unwrap() - 0.45f64.ln()).abs() < 1e-4);
    }

    #[test]
    fn job_count_does_not_change_results() {
        let ns: Vec<u32> = (1..=90).rev().collect();
        let one = exponent_series_at(&ref2(), &ns, 1, 1).unwrap();
        let four = exponent_series_at(&ref2(), &ns, 1, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.entries.len(), 90);

        // The range form stops at the first flag; everything before agrees.
        let range = exponent_series(&ref2(), 90, 1).unwrap();
        let flagged = range.first_flagged().unwrap();
        assert_eq!(range.entries.last().unwrap().n, flagged);
        assert_eq!(range.entries[..], one.entries[..flagged as usize]);
        assert_eq!(range.estimate, one.estimate);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(exponent_series(&ref1(), 10, 0), Err(Error::Domain(_))));
        assert!(matches!(exponent_series(&ref1(), 0, 1), Err(Error::Domain(_))));
        assert!(matches!(exponent_series_at(&ref1(), &[0, 3], 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_error_has_no_slope() {
        // t = 0 and R = 0: the alternatives are orthogonal to ρ.
        let p = FamilyParams::new(0.5, 0.5, 0.0, 0.5, 0.0, 0).unwrap();
        let s = exponent_series(&p, 5, 1).unwrap();
        assert!(s.entries.iter().all(|e| e.slope.is_none()));
        assert_eq!(s.estimate, None);
        assert_eq!(s.conjectured, f64::NEG_INFINITY);
    }
}
