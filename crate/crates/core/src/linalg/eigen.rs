//! Eigensolvers for Hermitian matrices.
//!
//! [`jacobi`] is the workhorse for full decompositions: cyclic sweeps in
//! fixed `(p, q)` order, so identical input bits give identical output bits.
//! [`eigenvalues_tridiagonal`] computes eigenvalues only (Householder
//! reduction followed by implicit QL) and is used where the dimension makes
//! Jacobi sweeps too expensive, e.g. trace norms of Kronecker powers.

use num_complex::Complex64;

use super::matrix::CMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors stored as columns.
    pub eigenvectors: CMatrix,
}

impl EigenReport {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `sum_k f(λ_k) v_k v_k*`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        CMatrix::from_fn(n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &w) in weights.iter().enumerate() {
                if w != 0.0 {
                    acc += v[(i, k)] * v[(j, k)].conj() * w;
                }
            }
            acc
        })
    }

    /// Largest `|<v_i, v_j> - δ_ij|` over all column pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    dot += v[(i, a)].conj() * v[(i, b)];
                }
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Only the Hermitian
/// part of `m` is meaningful; the caller is responsible for validation.
pub fn jacobi(m: &CMatrix) -> EigenReport {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let scale = a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off == 0.0 || off <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, |i, col| v[(i, order[col])]);
    EigenReport { eigenvalues, eigenvectors }
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Below this size the rotation cannot change either diagonal entry.
    if g <= 1e-300 || (app.abs() > 0.0 && aqq.abs() > 0.0 && g < f64::EPSILON * 1e-3 * app.abs().min(aqq.abs())) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s·conj(phase), c·conj(phase)]].
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.dim();
    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * u_pp + arq * u_qp;
        a[(r, q)] = arp * u_pq + arq * u_qq;
    }
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = u_pp.conj() * apc + u_qp.conj() * aqc;
        a[(q, col)] = u_pq.conj() * apc + u_qq.conj() * aqc;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * u_pp + vrq * u_qp;
        v[(r, q)] = vrp * u_pq + vrq * u_qq;
    }
}

/// Ascending eigenvalues of a Hermitian matrix via Householder
/// tridiagonalization and implicit QL. Real input takes an all-real path.
pub fn eigenvalues_tridiagonal(m: &CMatrix) -> Vec<f64> {
    let (mut d, mut e) = if m.is_real() {
        tridiagonalize_real(m)
    } else {
        tridiagonalize_complex(m)
    };
    ql_implicit(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    d
}

/// Returns the diagonal and the moduli of the sub-diagonal (`e[k]` couples
/// `k` and `k + 1`; the last entry is zero).
fn tridiagonalize_complex(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut e = vec![0.0; n];
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        // The reflector is built from the column scaled to unit max entry so
        // tiny columns do not underflow.
        let scale = ((k + 1)..n).map(|i| a[i * n + k].norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            v[i] = a[i * n + k] / scale;
        }
        let norm = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        let x0 = v[k + 1];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        v[k + 1] += phase * norm;
        let vnorm2: f64 = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum();
        e[k] = norm * scale;
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        for i in (k + 1)..n {
            let row = &a[i * n + k + 1..i * n + n];
            let s: Complex64 = row.iter().zip(&v[k + 1..n]).map(|(x, y)| x * y).sum();
            p[i] = s * tau;
        }
        let kk: Complex64 = ((k + 1)..n).map(|i| v[i].conj() * p[i]).sum::<Complex64>() * (tau / 2.0);
        for i in (k + 1)..n {
            p[i] -= kk * v[i];
        }
        for i in (k + 1)..n {
            let vi = v[i];
            let pi = p[i];
            let row = &mut a[i * n + k + 1..i * n + n];
            for (x, (vj, pj)) in row.iter_mut().zip(v[k + 1..n].iter().zip(&p[k + 1..n])) {
                *x -= vi * pj.conj() + pi * vj.conj();
            }
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + (n - 2)].norm();
    }
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    (d, e)
}

fn tridiagonalize_real(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a: Vec<f64> = m.as_slice().iter().map(|z| z.re).collect();
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let scale = ((k + 1)..n).map(|i| a[i * n + k].abs()).fold(0.0, f64::max);
        if scale == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            v[i] = a[i * n + k] / scale;
        }
        let norm = ((k + 1)..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        v[k + 1] += if v[k + 1] >= 0.0 { norm } else { -norm };
        let vnorm2: f64 = ((k + 1)..n).map(|i| v[i] * v[i]).sum();
        e[k] = norm * scale;
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        for i in (k + 1)..n {
            let row = &a[i * n + k + 1..i * n + n];
            p[i] = tau * row.iter().zip(&v[k + 1..n]).map(|(x, y)| x * y).sum::<f64>();
        }
        let kk = 0.5 * tau * ((k + 1)..n).map(|i| v[i] * p[i]).sum::<f64>();
        for i in (k + 1)..n {
            p[i] -= kk * v[i];
        }
        for i in (k + 1)..n {
            let vi = v[i];
            let pi = p[i];
            let row = &mut a[i * n + k + 1..i * n + n];
            for (x, (vj, pj)) in row.iter_mut().zip(v[k + 1..n].iter().zip(&p[k + 1..n])) {
                *x -= vi * pj + pi * vj;
            }
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + (n - 2)].abs();
    }
    let d = (0..n).map(|i| a[i * n + i]).collect();
    (d, e)
}

/// Implicit QL iteration with Wilkinson-type shifts on a symmetric
/// tridiagonal matrix; `d` is overwritten by the eigenvalues (unordered).
fn ql_implicit(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    e[n - 1] = 0.0;
    // Couplings below this are negligible against the whole matrix even
    // when both neighbouring diagonal entries are tiny.
    let floor = f64::EPSILON * 1e-3 * d.iter().chain(e.iter()).fold(0.0_f64, |m, x| m.max(x.abs()));
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 200 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
