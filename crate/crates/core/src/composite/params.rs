use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the linear constraints between overlaps.
pub const OVERLAP_SLACK: f64 = 1e-12;
/// Slack allowed on integrality of `1/p`, `1/q` and `Tr PQ`.
pub const INTEGER_SLACK: f64 = 1e-9;

/// The six numbers that fix the error behaviour of the family
/// `ρ = pP`, `σ₁ = qQ`, `σ₂ = |ψ><ψ|` with commuting projections `P`, `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "WireParams")]
pub struct FamilyParams {
    /// `p = 1 / Tr P`.
    pub rho_weight: f64,
    /// `q = 1 / Tr Q`.
    pub sigma_weight: f64,
    /// `t = <ψ, P ψ>`.
    pub psi_in_p: f64,
    /// `s = <ψ, Q ψ>`.
    pub psi_in_q: f64,
    /// `r = <ψ, PQ ψ>`.
    pub psi_in_pq: f64,
    /// `R = Tr PQ`.
    pub overlap_rank: u32,
}

/// Wire form with the conventional one-letter keys. `R` is read as a number
/// so that `1.0` and `1` are both accepted.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    p: f64,
    q: f64,
    t: f64,
    s: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
}

impl TryFrom<RawParams> for FamilyParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        let rank = raw.big_r.round();
        if !(raw.big_r >= 0.0) || (raw.big_r - rank).abs() > INTEGER_SLACK || rank > u32::MAX as f64 {
            return Err(Error::InvariantViolation(format!("R = {} is not a nonnegative integer", raw.big_r)));
        }
        FamilyParams::new(raw.p, raw.q, raw.t, raw.s, raw.r, rank as u32)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
struct WireParams {
    p: f64,
    q: f64,
    t: f64,
    s: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: u32,
}

impl From<FamilyParams> for WireParams {
    fn from(f: FamilyParams) -> Self {
        WireParams {
            p: f.rho_weight,
            q: f.sigma_weight,
            t: f.psi_in_p,
            s: f.psi_in_q,
            r: f.psi_in_pq,
            big_r: f.overlap_rank,
        }
    }
}

impl FamilyParams {
    /// Validates and returns `(p, q, t, s, r, R)`; overlaps within the slack
    /// of their constraints are clamped onto them.
    pub fn new(p: f64, q: f64, t: f64, s: f64, r: f64, overlap_rank: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        for (name, w) in [("p", p), ("q", q)] {
            if !(w > 0.0 && w < 1.0) {
                return bad(format!("{name} = {w} must lie in (0, 1)"));
            }
            let inv = 1.0 / w;
            if (inv - inv.round()).abs() > INTEGER_SLACK || inv.round() < 2.0 {
                return bad(format!("1/{name} = {inv} must be an integer ≥ 2"));
            }
        }
        for (name, x) in [("t", t), ("s", s), ("r", r)] {
            if !(x >= -OVERLAP_SLACK && x < 1.0) {
                return bad(format!("{name} = {x} must lie in [0, 1)"));
            }
        }
        let (t, s, r) = (t.max(0.0), s.max(0.0), r.max(0.0));
        if t - r < -OVERLAP_SLACK {
            return bad(format!("t − r = {} is negative", t - r));
        }
        if s - r < -OVERLAP_SLACK {
            return bad(format!("s − r = {} is negative", s - r));
        }
        if 1.0 - t - s + r < -OVERLAP_SLACK {
            return bad(format!("1 − t − s + r = {} is negative", 1.0 - t - s + r));
        }
        let cap = (1.0 / p).min(1.0 / q);
        if overlap_rank as f64 > cap + INTEGER_SLACK {
            return bad(format!("R = {overlap_rank} exceeds min(1/p, 1/q) = {cap}"));
        }
        let r = r.min(t).min(s);
        Ok(FamilyParams { rho_weight: p, sigma_weight: q, psi_in_p: t, psi_in_q: s, psi_in_pq: r, overlap_rank })
    }

    /// `Tr P`.
    pub fn rank_p(&self) -> u32 {
        (1.0 / self.rho_weight).round() as u32
    }

    /// `Tr Q`.
    pub fn rank_q(&self) -> u32 {
        (1.0 / self.sigma_weight).round() as u32
    }

    /// `min(p, q)`.
    pub fn min_weight(&self) -> f64 {
        self.rho_weight.min(self.sigma_weight)
    }

    /// `R · min(p, q)`, the base of the projection/projection error.
    pub fn projection_base(&self) -> f64 {
        self.overlap_rank as f64 * self.min_weight()
    }

    /// `p · t`, the base of the projection/pure-state error.
    pub fn pure_base(&self) -> f64 {
        self.rho_weight * self.psi_in_p
    }

    /// Whether the family reduces to the 3×3 matrix (`r = 0`) or needs 4×4.
    pub fn has_joint_overlap(&self) -> bool {
        self.psi_in_pq > 0.0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            // Validation failures travel through serde as custom messages.
            let msg = e.to_string();
            if let Some(detail) = msg.strip_prefix("invariant violation: ") {
                Error::InvariantViolation(detail.to_string())
            } else {
                Error::Parse(msg)
            }
        })
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p, q, t, s, r, R) = ({}, {}, {}, {}, {}, {})",
            self.rho_weight, self.sigma_weight, self.psi_in_p, self.psi_in_q, self.psi_in_pq, self.overlap_rank
        )
    }
}
