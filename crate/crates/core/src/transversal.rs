//! Coordinates `(θ, w₁, w₂, k)` on the transversal of the diagonal flow, the
//! parametrization `Ψ_k`, the first-return map, the invariant density and orbit
//! sampling.
//!
//! ```text
//! r = k^{1/4} / √|1 − w₁w₂|,   u₁ = e^{iθ},   v₂ = e^{iθ′},   θ′ = (k−1)π/4 − θ − arg(1 − w₁w₂)
//! u = r(u₁, v₂w₂),   v = r(u₁w₁, v₂)
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfrac::{lattice_of_theta, tg_step, CfracError, TGState};
use crate::gauss::{arg, cis, nearest_unit, Cx, GaussInt};
use crate::lattice::{det, Basis2, Index, C2};
use crate::reduction::{next_minimal, ReductionError, RATIONAL_TOL};
use crate::regions::{constraint_case, d8_normalize_pair, in_w, Boundary};

/// Tolerance of the membership check applied to points handed to [`psi`].
pub const MEMBERSHIP_TOL: f64 = 1e-9;

pub const DEFAULT_BURN_IN: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum TransversalError {
    #[error("point violates the transversal invariants: {0}")]
    Invalid(&'static str),
    #[error("w1 = 0: the orbit does not return")]
    NoReturn,
    #[error("the pair is not of index 1 or 2 (|det| = {0})")]
    BadDeterminant(f64),
    #[error(transparent)]
    Step(#[from] CfracError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalPoint {
    pub theta: f64,
    pub w1: Cx,
    pub w2: Cx,
    pub k: u8,
}

impl TransversalPoint {
    pub fn new(theta: f64, w1: Cx, w2: Cx, k: u8) -> Self {
        TransversalPoint { theta, w1, w2, k }
    }

    pub fn validate(&self) -> Result<(), TransversalError> {
        if !(0.0..FRAC_PI_2).contains(&self.theta) {
            return Err(TransversalError::Invalid("theta outside [0, π/2)"));
        }
        if self.k != 1 && self.k != 2 {
            return Err(TransversalError::Invalid("k must be 1 or 2"));
        }
        if !(self.w1.norm() < 1.0 && self.w2.norm() < 1.0) {
            return Err(TransversalError::Invalid("|w| ≥ 1"));
        }
        if !in_w(self.k, self.w1, self.w2, Boundary::Strict, MEMBERSHIP_TOL) {
            return Err(TransversalError::Invalid("(w1, w2) outside W_k"));
        }
        Ok(())
    }
}

/// The minimal pair `(u, v)` of `Ψ_k(θ, w₁, w₂)`.
pub fn psi(pt: &TransversalPoint) -> Result<Basis2, TransversalError> {
    pt.validate()?;
    let k = pt.k as f64;
    let one = Cx::new(1.0, 0.0);
    let m = one - pt.w1 * pt.w2;
    let r = k.powf(0.25) / m.norm().sqrt();
    let u1 = cis(pt.theta);
    let v2 = cis((k - 1.0) * FRAC_PI_4 - pt.theta - arg(m));
    let u = C2::new(r * u1, r * v2 * pt.w2);
    let v = C2::new(r * u1 * pt.w1, r * v2);
    let index = Index::from_u8(pt.k).expect("validated");
    Basis2::new(u, v, index).map_err(|_| TransversalError::Invalid("degenerate pair"))
}

/// `i^{-m}` with `m = ⌊a/(π/2)⌋`, so that `a + m'π/2 ∈ [0, π/2)`.
fn quadrant_unit(a: f64) -> (GaussInt, f64) {
    let m = (a / FRAC_PI_2).floor() as i64;
    let mut t = a - m as f64 * FRAC_PI_2;
    let mut m = m;
    if t >= FRAC_PI_2 {
        t -= FRAC_PI_2;
        m += 1;
    }
    if t < 0.0 {
        t = 0.0;
    }
    (GaussInt::unit(-m), t)
}

/// Coordinates of a consecutive pair `(u, v)` of minimal vectors of a unimodular
/// lattice. The pair need not lie on the ball: the flow does not change `θ`, `w₁`, `w₂`.
pub fn extract(u: C2, v: C2) -> Result<TransversalPoint, TransversalError> {
    let d = det(u, v);
    let index = Index::from_det_modulus(d.norm()).ok_or(TransversalError::BadDeterminant(d.norm()))?;
    let k = index.as_u8();
    let (alpha, theta) = quadrant_unit(arg(u.x1));
    let alpha = alpha.to_cx();
    let target = (k as f64).sqrt() * cis((k as f64 - 1.0) * FRAC_PI_4);
    let beta = nearest_unit(target / (alpha * d)).to_cx();
    Ok(TransversalPoint { theta, w1: beta * v.x1 / (alpha * u.x1), w2: alpha * u.x2 / (beta * v.x2), k })
}

/// Flow time taking the cylinder of the pair `(u, v)` to a ball: `½·ln(|v₂|/|u₁|)`.
pub fn ball_time(u: C2, v: C2) -> f64 {
    0.5 * (v.x2.norm() / u.x1.norm()).ln()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Return {
    pub point: TransversalPoint,
    pub return_time: f64,
    /// `α ∈ 𝕌₄` with `θ′ = θ + arg w₁ + arg α ∈ [0, π/2)`.
    pub alpha: GaussInt,
    pub tie: bool,
    pub near_boundary: bool,
    pub candidates: usize,
}

/// The first return to the transversal: `(θ, w₁, w₂) ↦ (θ′, α²·T_G(w₁, w₂))` with
/// return time `½·ln(|z₂|/|v₁|) = −½·ln(|w₁||w₂′|)`.
pub fn first_return(pt: &TransversalPoint) -> Result<Return, TransversalError> {
    // w₁ = 0 means a lattice vector on the x₂-axis; rounding leaves it at ~1e-16
    if pt.w1.norm() < RATIONAL_TOL {
        return Err(TransversalError::NoReturn);
    }
    let step = tg_step(&TGState::new(pt.w1, pt.w2, pt.k))?;
    let s = step.state;
    let (alpha, theta) = quadrant_unit(pt.theta + arg(pt.w1));
    let a2 = (alpha * alpha).to_cx();
    let point = TransversalPoint { theta, w1: a2 * s.w1, w2: a2 * s.w2, k: s.k };
    let return_time = -0.5 * (pt.w1.norm() * s.w2.norm()).ln();
    Ok(Return {
        point,
        return_time,
        alpha,
        tie: step.tie,
        near_boundary: step.near_boundary,
        candidates: step.candidates,
    })
}

/// The invariant density `32/|1 − w₁w₂|⁴`.
pub fn density(w1: Cx, w2: Cx) -> f64 {
    32.0 / (Cx::new(1.0, 0.0) - w1 * w2).norm().powi(4)
}

/// The first transversal point of `Λ_θ`, from its minimal vectors `X₁, X₂`.
/// `X₀ = (1, 0)` is skipped: its pair has `w₂ = 0`, on the boundary of `𝒟`.
pub fn first_hit(theta: Cx) -> Result<TransversalPoint, TransversalError> {
    let basis = lattice_of_theta(theta);
    let x0 = C2::from_re(1.0, 0.0);
    let x1 = next_minimal(&basis, x0)?.point.x;
    let x2 = next_minimal(&basis, x1)?.point.x;
    extract(x1, x2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitPoint {
    pub point: TransversalPoint,
    /// Constraint case of the `D8`-normalized pair (index 1 only).
    pub case: Option<u8>,
    /// Time until the next return.
    pub t_return: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct OrbitSample {
    pub points: Vec<OrbitPoint>,
    /// The orbit ended before `n_steps` points (rational seed).
    pub truncated: bool,
    /// Number of steps whose `≺`-minimum was not unique.
    pub ties: usize,
}

pub fn point_case(pt: &TransversalPoint) -> Option<u8> {
    if pt.k != 1 {
        return None;
    }
    let (_, a, b) = d8_normalize_pair(pt.w1, pt.w2);
    constraint_case(a, b)
}

/// Iterate the first return from the first hit of `Λ_seed`, discard `burn_in`
/// points and keep the next `n_steps`.
pub fn orbit_sample(seed_theta: Cx, n_steps: usize, burn_in: usize) -> Result<OrbitSample, TransversalError> {
    let mut out = OrbitSample::default();
    let mut pt = match first_hit(seed_theta) {
        Ok(p) => p,
        Err(TransversalError::Reduction(ReductionError::NoSuccessor)) => {
            out.truncated = true;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.points.reserve(n_steps);
    let mut seen = 0usize;
    while out.points.len() < n_steps {
        let ret = match first_return(&pt) {
            Ok(r) => r,
            Err(TransversalError::NoReturn) => {
                out.truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        out.ties += ret.tie as usize;
        if seen >= burn_in {
            out.points.push(OrbitPoint { point: pt, case: point_case(&pt), t_return: ret.return_time });
        }
        seen += 1;
        pt = ret.point;
    }
    Ok(out)
}
