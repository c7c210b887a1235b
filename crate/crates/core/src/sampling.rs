//! Seedable random operators for tests, property checks and the CLI.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::discrimination::Povm;
use crate::linalg::{CMatrix, HermitianOperator, PsdOperator};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    (0..cols).map(|_| (0..rows).map(|_| complex_gaussian(rng)).collect()).collect()
}

/// Haar-random unitary (Gram–Schmidt on a complex Ginibre matrix).
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut cols = ginibre(dim, dim, rng);
    for k in 0..dim {
        for j in 0..k {
            let (done, rest) = cols.split_at_mut(k);
            let proj: Complex64 = done[j].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in rest[0].iter_mut().zip(&done[j]) {
                *x -= proj * y;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    CMatrix::from_fn(dim, |i, j| cols[j][i])
}

pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianOperator {
    let g = CMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    HermitianOperator::symmetrized(g)
}

/// `G G*` for a `dim × rank` Ginibre matrix `G`, scaled to unit trace.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> PsdOperator {
    let cols = ginibre(dim, rank.max(1), rng);
    let mut m = CMatrix::zeros(dim);
    for c in &cols {
        m = &m + &CMatrix::outer(c);
    }
    let tr = m.trace().re;
    PsdOperator::assume(HermitianOperator::symmetrized(m.scale(1.0 / tr)))
}

/// Random PSD operator of random rank and trace in `(0, 1]`.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PsdOperator {
    let rank = rng.gen_range(1..=dim);
    let weight: f64 = rng.gen_range(0.05..=1.0);
    random_density(dim, rank, rng).scale(weight).expect("positive weight")
}

/// Random POVM with `outcomes` effects: `M_x = S^{-1/2} G_x S^{-1/2}` with
/// `S = Σ G_x` for random PSD `G_x`.
pub fn random_povm<R: Rng + ?Sized>(dim: usize, outcomes: usize, rng: &mut R) -> Povm {
    let raw: Vec<PsdOperator> = (0..outcomes).map(|_| random_density(dim, dim, rng)).collect();
    let mut total = HermitianOperator::zeros(dim);
    for g in &raw {
        total = total.add(g).expect("same dimension");
    }
    let inv_sqrt = total.map_spectrum(|l| 1.0 / l.sqrt());
    let effects = raw
        .iter()
        .map(|g| {
            let m = &(inv_sqrt.matrix() * g.matrix()) * inv_sqrt.matrix();
            PsdOperator::assume(HermitianOperator::symmetrized(m))
        })
        .collect();
    Povm::assume(effects)
}
