//! One-dimensional searches on `[lo, hi]`.

/// Inverse golden ratio, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Result of a scalar minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMin {
    pub x: f64,
    pub fx: f64,
    pub evaluations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `xtol`.
///
/// The returned point is the best one evaluated, so the value never exceeds
/// the value at either interior probe.
pub fn golden_section_min<F>(f: F, lo: f64, hi: f64, xtol: f64) -> ScalarMin
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while (b - a) > xtol && evaluations < 500 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    if fc <= fd {
        ScalarMin { x: c, fx: fc, evaluations }
    } else {
        ScalarMin { x: d, fx: fd, evaluations }
    }
}

/// Minimizes `f` on `[lo, hi]` by scanning a uniform grid of `cells + 1`
/// points, then refining with golden-section search inside the two cells
/// adjacent to the best grid point.
///
/// The grid pass guards against plateaus that are flat at machine precision,
/// where golden section alone can wander. Grid points (endpoints included)
/// remain candidates, so the result is never worse than the best grid value.
pub fn grid_then_golden<F>(f: F, lo: f64, hi: f64, cells: usize, xtol: f64) -> ScalarMin
where
    F: Fn(f64) -> f64,
{
    let cells = cells.max(1);
    let step = (hi - lo) / cells as f64;
    let mut best = ScalarMin { x: lo, fx: f(lo), evaluations: 1 };
    let mut best_k = 0;
    for k in 1..=cells {
        let x = if k == cells { hi } else { lo + step * k as f64 };
        let fx = f(x);
        best.evaluations += 1;
        if fx < best.fx {
            best.x = x;
            best.fx = fx;
            best_k = k;
        }
    }
    let a = if best_k == 0 { lo } else { lo + step * (best_k - 1) as f64 };
    let b = if best_k + 1 >= cells { hi } else { lo + step * (best_k + 1) as f64 };
    let refined = golden_section_min(&f, a, b, xtol);
    let evaluations = best.evaluations + refined.evaluations;
    if refined.fx < best.fx {
        ScalarMin { evaluations, ..refined }
    } else {
        ScalarMin { evaluations, ..best }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        // A smooth minimum is only resolvable to about sqrt(eps) in x.
        let m = golden_section_min(|x| (x - 0.3).powi(2) + 1.0, 0.0, 1.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.fx - 1.0).abs() < 1e-15);
        let m = golden_section_min(|x| (x - 0.3).abs(), 0.0, 1.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-10);
    }

    #[test]
    fn grid_keeps_endpoint_minimum() {
        // Monotone increasing: the minimum sits on the left endpoint.
        let m = grid_then_golden(|x| x, 0.0, 1.0, 64, 1e-10);
        assert_eq!(m.x, 0.0);
        assert_eq!(m.fx, 0.0);
        let m = grid_then_golden(|x| -x, 0.0, 1.0, 64, 1e-10);
        assert_eq!(m.x, 1.0);
    }

    #[test]
    fn grid_handles_flat_function() {
        let m = grid_then_golden(|_| 0.5, 0.0, 1.0, 64, 1e-10);
        assert_eq!(m.fx, 0.5);
    }
}
