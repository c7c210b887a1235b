//! Concrete realizations of the family: two commuting projections and a
//! unit vector.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;

use super::params::{FamilyParams, INTEGER_SLACK};
use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::{psd_order_leq, CMatrix, HermitianOperator, Projector, PsdOperator};
use crate::sampling::{random_unitary, random_unit_vector};

const UNIT_TOL: f64 = 1e-12;
const COMMUTE_TOL: f64 = 1e-10;
const EIGENVECTOR_TOL: f64 = 1e-9;

/// `P`, `Q` and `ψ` defining `ρ = P / Tr P`, `σ₁ = Q / Tr Q`, `σ₂ = |ψ><ψ|`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialFamily {
    p_proj: Projector,
    q_proj: Projector,
    psi: Vec<Complex64>,
}

impl SpecialFamily {
    /// Checks that `ψ` is a unit vector and that the projections commute.
    pub fn new(p_proj: Projector, q_proj: Projector, psi: Vec<Complex64>) -> Result<Self> {
        let f = Self::unchecked(p_proj, q_proj, psi)?;
        let norm = f.psi_norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvariantViolation(format!("ψ has norm {norm}, expected 1")));
        }
        let c = f.commutator_norm();
        if c > COMMUTE_TOL {
            return Err(Error::InvariantViolation(format!("‖PQ − QP‖_F = {c:e}: projections do not commute")));
        }
        Ok(f)
    }

    /// Only checks shapes; use [`validate_assumptions`] to inspect the rest.
    pub fn unchecked(p_proj: Projector, q_proj: Projector, psi: Vec<Complex64>) -> Result<Self> {
        ensure_same_dim("family projections", p_proj.dim(), q_proj.dim())?;
        ensure_same_dim("family vector", p_proj.dim(), psi.len())?;
        Ok(SpecialFamily { p_proj, q_proj, psi })
    }

    pub fn p_proj(&self) -> &Projector {
        &self.p_proj
    }

    pub fn q_proj(&self) -> &Projector {
        &self.q_proj
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn dim(&self) -> usize {
        self.psi.len()
    }

    /// `ρ = P / Tr P`.
    pub fn rho(&self) -> PsdOperator {
        normalized(&self.p_proj)
    }

    /// `σ₁ = Q / Tr Q`.
    pub fn sigma1(&self) -> PsdOperator {
        normalized(&self.q_proj)
    }

    /// `σ₂ = |ψ><ψ|`.
    pub fn sigma2(&self) -> PsdOperator {
        PsdOperator::rank_one(&self.psi)
    }

    fn psi_norm(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn commutator_norm(&self) -> f64 {
        let (p, q) = (self.p_proj.matrix(), self.q_proj.matrix());
        (&(p * q) - &(q * p)).frobenius_norm()
    }

    fn expectation(&self, m: &CMatrix) -> f64 {
        let mv = m.apply(&self.psi);
        self.psi.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }
}

fn normalized(p: &Projector) -> PsdOperator {
    let tr = p.trace();
    p.psd().scale(if tr > 0.0 { 1.0 / tr } else { 0.0 }).expect("nonnegative scale")
}

fn integer_trace(name: &str, x: f64) -> Result<u32> {
    let k = x.round();
    if (x - k).abs() > INTEGER_SLACK || k < 0.0 {
        return Err(Error::InvariantViolation(format!("{name} = {x} is not an integer")));
    }
    Ok(k as u32)
}

/// Reads `(p, q, t, s, r, R)` off a realization.
pub fn extract_params(f: &SpecialFamily) -> Result<FamilyParams> {
    let f = SpecialFamily::new(f.p_proj.clone(), f.q_proj.clone(), f.psi.clone())?;
    let rank_p = integer_trace("Tr P", f.p_proj.trace())?;
    let rank_q = integer_trace("Tr Q", f.q_proj.trace())?;
    if rank_p == 0 || rank_q == 0 {
        return Err(Error::InvariantViolation("projections must be nonzero".into()));
    }
    let pq = f.p_proj.matrix() * f.q_proj.matrix();
    let overlap_rank = integer_trace("Tr PQ", pq.trace().re)?;
    FamilyParams::new(
        1.0 / rank_p as f64,
        1.0 / rank_q as f64,
        f.expectation(f.p_proj.matrix()),
        f.expectation(f.q_proj.matrix()),
        f.expectation(&pq),
        overlap_rank,
    )
}

/// The standing assumptions on a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assumption {
    /// `P` and `Q` commute.
    Commuting,
    /// `ψ` is a unit vector.
    UnitVector,
    /// Neither projection lies below the other.
    NotNested,
    /// `ψ` is not an eigenvector of `P` or of `Q`.
    NotEigenvector,
    /// Both projections have rank at least 2.
    NotPure,
}

impl Assumption {
    pub fn label(self) -> &'static str {
        match self {
            Assumption::Commuting => "(1)",
            Assumption::UnitVector => "(2)",
            Assumption::NotNested => "(3)",
            Assumption::NotEigenvector => "(4)",
            Assumption::NotPure => "(5)",
        }
    }

    /// What the assumption requires, in words.
    pub fn description(self) -> &'static str {
        match self {
            Assumption::Commuting => "P and Q commute",
            Assumption::UnitVector => "ψ is a unit vector",
            Assumption::NotNested => "neither projection lies below the other",
            Assumption::NotEigenvector => "ψ is not an eigenvector of P or of Q",
            Assumption::NotPure => "both projections have rank at least 2",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Violated assumptions, in label order; empty when all hold.
pub fn validate_assumptions(f: &SpecialFamily) -> Vec<Assumption> {
    let mut out = Vec::new();
    if f.commutator_norm() > COMMUTE_TOL {
        out.push(Assumption::Commuting);
    }
    if (f.psi_norm() - 1.0).abs() > UNIT_TOL {
        out.push(Assumption::UnitVector);
    }
    let (p, q): (&HermitianOperator, &HermitianOperator) = (&f.p_proj, &f.q_proj);
    let nested = psd_order_leq(p, q, 1e-9).unwrap_or(true) || psd_order_leq(q, p, 1e-9).unwrap_or(true);
    if nested {
        out.push(Assumption::NotNested);
    }
    let psi_proj = CMatrix::outer(&f.psi);
    let commutes_with = |m: &CMatrix| (&(&psi_proj * m) - &(m * &psi_proj)).frobenius_norm() <= EIGENVECTOR_TOL;
    if commutes_with(f.p_proj.matrix()) || commutes_with(f.q_proj.matrix()) {
        out.push(Assumption::NotEigenvector);
    }
    if f.p_proj.trace() < 2.0 - INTEGER_SLACK || f.q_proj.trace() < 2.0 - INTEGER_SLACK {
        out.push(Assumption::NotPure);
    }
    out
}

/// Block sizes `(P only, P and Q, Q only, neither)` and the matching
/// components of `ψ` in the minimal realization.
fn blocks(params: &FamilyParams) -> Result<([usize; 4], [f64; 4])> {
    let big_r = params.overlap_rank;
    let (rank_p, rank_q) = (params.rank_p(), params.rank_q());
    if big_r > rank_p || big_r > rank_q {
        return Err(Error::InfeasibleParams(format!(
            "Tr PQ = {big_r} exceeds Tr P = {rank_p} or Tr Q = {rank_q}"
        )));
    }
    let sizes = [(rank_p - big_r) as usize, big_r as usize, (rank_q - big_r) as usize, 1];
    let (t, s, r) = (params.psi_in_p, params.psi_in_q, params.psi_in_pq);
    let weights = [t - r, r, s - r, 1.0 - t - s + r].map(|w| w.max(0.0));
    let names = ["P only", "PQ", "Q only", "complement"];
    for k in 0..4 {
        if sizes[k] == 0 && weights[k] > 0.0 {
            return Err(Error::InfeasibleParams(format!(
                "ψ needs weight {} in the {} block, which is empty",
                weights[k], names[k]
            )));
        }
    }
    Ok((sizes, weights.map(f64::sqrt)))
}

/// Minimal block model: coordinates ordered as (P only, PQ, Q only,
/// complement) with `ψ` on the first vector of each block.
pub fn canonical_realization(params: &FamilyParams) -> Result<SpecialFamily> {
    let (sizes, amps) = blocks(params)?;
    assemble(sizes, |k, _| scaled(amps[k], unit_first(sizes[k])))
}

fn unit_first(size: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); size];
    if size > 0 {
        v[0] = Complex64::new(1.0, 0.0);
    }
    v
}

fn scaled(a: f64, v: Vec<Complex64>) -> Vec<Complex64> {
    v.into_iter().map(|z| z * a).collect()
}

fn assemble(sizes: [usize; 4], mut block_vec: impl FnMut(usize, usize) -> Vec<Complex64>) -> Result<SpecialFamily> {
    let dim: usize = sizes.iter().sum();
    let offsets = [0, sizes[0], sizes[0] + sizes[1], sizes[0] + sizes[1] + sizes[2]];
    let mut psi = Vec::with_capacity(dim);
    for k in 0..4 {
        psi.extend(block_vec(k, sizes[k]));
    }
    let indicator = |lo: usize, hi: usize| -> Vec<f64> { (0..dim).map(|i| if i >= lo && i < hi { 1.0 } else { 0.0 }).collect() };
    let p = Projector::from_real_diagonal(&indicator(0, offsets[2]))?;
    let q = Projector::from_real_diagonal(&indicator(offsets[1], offsets[3]))?;
    SpecialFamily::new(p, q, psi)
}

/// Another realization of the same parameters: `ψ` is spread over each
/// block by a random unit vector, the complement gets `extra_complement`
/// additional dimensions, and everything is conjugated by a random unitary.
pub fn rotated_realization<R: Rng + ?Sized>(
    params: &FamilyParams,
    extra_complement: usize,
    rng: &mut R,
) -> Result<SpecialFamily> {
    let (mut sizes, amps) = blocks(params)?;
    sizes[3] += extra_complement;
    let block_form = assemble(sizes, |k, size| {
        if size == 0 {
            Vec::new()
        } else {
            scaled(amps[k], random_unit_vector(size, rng))
        }
    })?;
    let dim = block_form.dim();
    let w = random_unitary(dim, rng);
    let conj = |m: &CMatrix| -> Result<Projector> {
        let rotated = &(&w * m) * &w.adjoint();
        Projector::new(HermitianOperator::new(rotated)?)
    };
    let p = conj(block_form.p_proj.matrix())?;
    let q = conj(block_form.q_proj.matrix())?;
    let psi = w.apply(&block_form.psi);
    SpecialFamily::new(p, q, psi)
}

/// How the sampler treats `r = <ψ, PQ ψ>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JointOverlap {
    Any,
    Zero,
    Positive,
}

/// Draws feasible parameters whose minimal realization has dimension at
/// most `max_dim` and satisfies all standing assumptions.
#[derive(Clone, Copy, Debug)]
pub struct ParamsSampler {
    pub max_dim: usize,
    pub joint_overlap: JointOverlap,
    /// Force `p = q`.
    pub equal_weights: bool,
}

impl ParamsSampler {
    pub fn new(max_dim: usize) -> Self {
        ParamsSampler { max_dim, joint_overlap: JointOverlap::Any, equal_weights: false }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<FamilyParams> {
        if self.max_dim < 4 + usize::from(self.joint_overlap == JointOverlap::Zero) {
            return Err(Error::InfeasibleParams(format!("no family fits in dimension {}", self.max_dim)));
        }
        let max_rank = self.max_dim as u32;
        loop {
            let rank_p = rng.gen_range(2..=max_rank);
            let rank_q = if self.equal_weights { rank_p } else { rng.gen_range(2..=max_rank) };
            let min_r = u32::from(self.joint_overlap == JointOverlap::Positive);
            let max_r = if self.joint_overlap == JointOverlap::Zero { 0 } else { rank_p.min(rank_q) - 1 };
            if min_r > max_r {
                continue;
            }
            let big_r = rng.gen_range(min_r..=max_r);
            if (rank_p + rank_q - big_r + 1) as usize > self.max_dim {
                continue;
            }
            let joint = match self.joint_overlap {
                JointOverlap::Zero => false,
                JointOverlap::Positive => true,
                JointOverlap::Any => big_r > 0 && rng.gen_bool(0.5),
            };
            // Uniform point on the simplex of block weights.
            let mut w: [f64; 4] = [rng.sample(Exp1), rng.sample(Exp1), rng.sample(Exp1), rng.sample(Exp1)];
            if !joint {
                w[1] = 0.0;
            }
            let total: f64 = w.iter().sum();
            let [wp, wpq, wq, _] = w.map(|x| x / total);
            return FamilyParams::new(
                1.0 / rank_p as f64,
                1.0 / rank_q as f64,
                wp + wpq,
                wq + wpq,
                wpq,
                big_r,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn family(p: &[f64], q: &[f64], psi: &[f64]) -> SpecialFamily {
        SpecialFamily::new(
            Projector::from_real_diagonal(p).unwrap(),
            Projector::from_real_diagonal(q).unwrap(),
            psi.iter().map(|&x| c(x)).collect(),
        )
        .unwrap()
    }

    fn close(a: &FamilyParams, b: &FamilyParams, tol: f64) -> bool {
        a.overlap_rank == b.overlap_rank
            && [
                (a.rho_weight, b.rho_weight),
                (a.sigma_weight, b.sigma_weight),
                (a.psi_in_p, b.psi_in_p),
                (a.psi_in_q, b.psi_in_q),
                (a.psi_in_pq, b.psi_in_pq),
            ]
            .iter()
            .all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn extract_dim3_example() {
        let s = 3f64.sqrt().recip();
        let f = family(&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0], &[s, s, s]);
        let got = extract_params(&f).unwrap();
        let want = FamilyParams::new(0.5, 0.5, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1).unwrap();
        assert!(close(&got, &want, 1e-15), "{got}");
        assert!(validate_assumptions(&f).is_empty());
    }

    #[test]
    fn extract_dim4_example() {
        let f = family(&[1.0, 1.0, 0.0, 0.0], &[0.0, 1.0, 1.0, 0.0], &[0.5f64.sqrt(), 0.0, 0.3f64.sqrt(), 0.2f64.sqrt()]);
        let got = extract_params(&f).unwrap();
        let want = FamilyParams::new(0.5, 0.5, 0.5, 0.3, 0.0, 1).unwrap();
        assert!(close(&got, &want, 1e-15), "{got}");
    }

    #[test]
    fn assumption_violations() {
        let s = 3f64.sqrt().recip();
        let f = family(&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[s, s, s]);
        assert!(validate_assumptions(&f).contains(&Assumption::NotNested));

        // ψ inside Im P ∩ ker Q.
        let f = family(&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0], &[1.0, 0.0, 0.0]);
        assert!(validate_assumptions(&f).contains(&Assumption::NotEigenvector));

        let f = family(&[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0], &[s, s, s]);
        assert!(validate_assumptions(&f).contains(&Assumption::NotPure));

        let f = SpecialFamily::unchecked(
            Projector::from_real_diagonal(&[1.0, 1.0, 0.0]).unwrap(),
            Projector::from_real_diagonal(&[0.0, 1.0, 1.0]).unwrap(),
            vec![c(0.6), c(0.6), c(0.6)],
        )
        .unwrap();
        assert_eq!(validate_assumptions(&f), vec![Assumption::UnitVector]);
        assert!(matches!(extract_params(&f), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn non_commuting_projections() {
        let h = 0.5;
        let plus = Projector::new(HermitianOperator::from_real_rows(&[vec![h, h, 0.0], vec![h, h, 0.0], vec![0.0, 0.0, 1.0]]).unwrap())
            .unwrap();
        let p = Projector::from_real_diagonal(&[1.0, 0.0, 1.0]).unwrap();
        let psi = vec![c(1.0), c(0.0), c(0.0)];
        let f = SpecialFamily::unchecked(p.clone(), plus.clone(), psi.clone()).unwrap();
        assert!(validate_assumptions(&f).contains(&Assumption::Commuting));
        assert!(SpecialFamily::new(p, plus, psi).is_err());
    }

    #[test]
    fn canonical_reference_realizations() {
        let ref1 = FamilyParams::new(0.5, 0.5, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1).unwrap();
        let f = canonical_realization(&ref1).unwrap();
        assert_eq!(f.dim(), 4);
        assert!(close(&extract_params(&f).unwrap(), &ref1, 1e-10));

        let ref2 = FamilyParams::new(0.5, 0.25, 0.9, 0.15, 0.1, 1).unwrap();
        let f = canonical_realization(&ref2).unwrap();
        assert_eq!(f.dim(), 6);
        assert_eq!(f.q_proj().rank(), 4);
        assert!(close(&extract_params(&f).unwrap(), &ref2, 1e-10));
    }

    #[test]
    fn canonical_without_overlap_block() {
        let params = FamilyParams::new(0.5, 0.5, 0.4, 0.3, 0.0, 0).unwrap();
        let f = canonical_realization(&params).unwrap();
        assert_eq!(f.dim(), 5);
        assert_eq!(f.psi().iter().filter(|z| z.norm() > 0.0).count(), 3);
        let pq = f.p_proj().matrix() * f.q_proj().matrix();
        assert_eq!(pq.frobenius_norm(), 0.0);
    }

    #[test]
    fn infeasible_parameters() {
        let params = FamilyParams::new(0.5, 0.5, 0.4, 0.3, 0.1, 0).unwrap();
        assert!(matches!(canonical_realization(&params), Err(Error::InfeasibleParams(_))));
    }

    #[test]
    fn rotated_realization_has_same_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = FamilyParams::new(1.0 / 3.0, 0.5, 0.5, 0.4, 0.2, 1).unwrap();
        let f = rotated_realization(&params, 1, &mut rng).unwrap();
        assert_eq!(f.dim(), 6);
        assert!(close(&extract_params(&f).unwrap(), &params, 1e-10));
        assert!(f.p_proj().matrix().max_off_diagonal() > 1e-3);
    }

    #[test]
    fn sampler_respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut sampler = ParamsSampler::new(6);
        for _ in 0..50 {
            let p = sampler.sample(&mut rng).unwrap();
            let f = canonical_realization(&p).unwrap();
            assert!(f.dim() <= 6);
            assert!(validate_assumptions(&f).is_empty(), "{p}");
        }
        sampler.joint_overlap = JointOverlap::Positive;
        sampler.equal_weights = true;
        for _ in 0..20 {
            let p = sampler.sample(&mut rng).unwrap();
            assert!(p.psi_in_pq > 0.0 && p.rho_weight == p.sigma_weight);
        }
        sampler.joint_overlap = JointOverlap::Zero;
        sampler.equal_weights = false;
        for _ in 0..20 {
            let p = sampler.sample(&mut rng).unwrap();
            assert_eq!(p.psi_in_pq, 0.0);
            assert!(p.psi_in_p > 0.0 && p.psi_in_q > 0.0);
        }
    }
}
