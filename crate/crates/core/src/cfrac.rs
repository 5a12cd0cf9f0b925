//! Best Diophantine approximations of a complex number, the two-branch step map
//! `T_G` on `(w₁, w₂)` coordinates, and the Hurwitz step for comparison.
//!
//! The lattice `Λ_θ` has columns `(1, 0)` and `(−θ, 1)`, so the point with
//! coordinates `(p, q)` is `(p − qθ, q)`. Its minimal vectors with `q ≠ 0` are
//! exactly the best approximation vectors of `θ`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{candidates_near_boundary, gauss_candidates_within_1, moduli_cmp, Cx, GaussInt, JElem, ONE_PLUS_I};
use crate::lattice::{lex_cmp, Basis2, Index, LatticePoint, C2, MODULUS_TOL};
use crate::reduction::{next_minimal, ReductionError};

/// Distance to the strict bound `|g − c| < 1` below which a step is flagged.
pub const NEAR_BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum CfracError {
    #[error("w1 = 0: the direction is rational and the orbit ends")]
    RationalDirection,
    #[error("empty candidate set for a step")]
    EmptyCandidates,
    #[error("index must be 1 or 2, got {0}")]
    BadIndex(u8),
    #[error("q_max must be at least 1")]
    BadBound,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

pub fn lattice_of_theta(theta: Cx) -> Basis2 {
    Basis2::new(C2::from_re(1.0, 0.0), C2::new(-theta, Cx::new(1.0, 0.0)), Index::One)
        .expect("triangular basis with unit determinant")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestApprox {
    pub p: GaussInt,
    pub q: GaussInt,
    pub qmod: f64,
    pub err: f64,
    /// Index of the pair formed with the previous term (the first term pairs with `(1, 0)`).
    pub k: u8,
    /// The successor search met a candidate with equal moduli that is not a unit multiple.
    pub tie: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestApproxSequence {
    pub terms: Vec<BestApprox>,
    /// `θ ∈ ℚ(i)`: the last term is exact and has no successor.
    pub terminated: bool,
}

/// Consecutive minimal vectors of `Λ_θ`, starting from `(1, 0)`, up to `|q| ≤ q_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalChain {
    pub points: Vec<LatticePoint>,
    pub ties: Vec<bool>,
    pub terminated: bool,
}

fn unit_normalize(p: GaussInt, q: GaussInt) -> (GaussInt, GaussInt) {
    let (_, u) = q.normalized();
    (u * p, u * q)
}

/// The minimal vectors of `Λ_θ` in increasing `|q|`, including the vector `(1, 0)`
/// with `q = 0`. Coordinates are recomputed from the integers at every step.
pub fn minimal_chain(theta: Cx, q_max: f64) -> Result<MinimalChain, CfracError> {
    if !(q_max >= 1.0) {
        return Err(CfracError::BadBound);
    }
    let basis = lattice_of_theta(theta);
    let mut cur = basis.lattice_point(GaussInt::ONE, GaussInt::ZERO);
    let mut points = vec![cur];
    let mut ties = vec![false];
    loop {
        match next_minimal(&basis, cur.x) {
            Ok(s) => {
                let (a, b) = unit_normalize(s.point.a, s.point.b);
                if b.abs() > q_max {
                    return Ok(MinimalChain { points, ties, terminated: false });
                }
                cur = basis.lattice_point(a, b);
                points.push(cur);
                ties.push(s.tie);
            }
            Err(ReductionError::NoSuccessor) => return Ok(MinimalChain { points, ties, terminated: true }),
            Err(e) => return Err(e.into()),
        }
    }
}

/// `p_n q_{n+1} − p_{n+1} q_n`, the determinant of two points of `Λ_θ`.
pub fn pair_det(x: &LatticePoint, y: &LatticePoint) -> GaussInt {
    x.a * y.b - y.a * x.b
}

/// The best approximation vectors `(p, q)` with `0 < |q| ≤ q_max`, one per class,
/// normalized to `arg q ∈ [0, π/2)`.
pub fn best_approximations(theta: Cx, q_max: f64) -> Result<BestApproxSequence, CfracError> {
    let chain = minimal_chain(theta, q_max)?;
    let terms = chain
        .points
        .windows(2)
        .zip(&chain.ties[1..])
        .map(|(w, &tie)| {
            let (p, q) = (w[1].a, w[1].b);
            BestApprox {
                p,
                q,
                qmod: q.abs(),
                err: (p.to_cx() - q.to_cx() * theta).norm(),
                k: pair_det(&w[0], &w[1]).norm() as u8,
                tie,
            }
        })
        .collect();
    Ok(BestApproxSequence { terms, terminated: chain.terminated })
}

/// The coefficient `a` of the last step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepCoeff {
    Gauss(GaussInt),
    J(JElem),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TGState {
    pub w1: Cx,
    pub w2: Cx,
    pub k: u8,
    pub coeffs: Option<(StepCoeff, GaussInt)>,
}

impl TGState {
    pub fn new(w1: Cx, w2: Cx, k: u8) -> Self {
        TGState { w1, w2, k, coeffs: None }
    }
}

/// One application of `T_G` with diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TGStep {
    pub state: TGState,
    /// Size of the candidate set `E₁` or `E₂`.
    pub candidates: usize,
    /// Another candidate had the same moduli as the winner.
    pub tie: bool,
    /// Some candidate lay within [`NEAR_BOUNDARY_TOL`] of `|g − c| = 1`.
    pub near_boundary: bool,
}

struct Candidate {
    z: C2,
    a: StepCoeff,
    g: GaussInt,
}

/// The step of the first-return dynamics. With `u = (1, w₂)`, `v = (w₁, 1)` the next
/// minimal vector is the `≺`-least `z` among
/// `−au + gv`, `a ∈ {1, 1+i}`, `|a/w₁ − g| < 1` (index 1), or
/// `−(u+v)/(1+i) + gv`, `|1/((1+i)w₁) + 1/(1+i) − g| < 1` (index 2);
/// then `w₁′ = z₁/w₁`, `w₂′ = 1/z₂`.
pub fn tg_step(state: &TGState) -> Result<TGStep, CfracError> {
    let (w1, w2) = (state.w1, state.w2);
    if w1 == Cx::new(0.0, 0.0) {
        return Err(CfracError::RationalDirection);
    }
    let one = Cx::new(1.0, 0.0);
    let mut cands: Vec<Candidate> = Vec::with_capacity(8);
    let mut near = false;
    match state.k {
        1 => {
            for a in [GaussInt::ONE, GaussInt::ONE_PLUS_I] {
                let ac = a.to_cx();
                let c = ac / w1;
                near |= candidates_near_boundary(c, NEAR_BOUNDARY_TOL);
                for g in gauss_candidates_within_1(c) {
                    let gc = g.to_cx();
                    cands.push(Candidate { z: C2::new(gc * w1 - ac, gc - ac * w2), a: StepCoeff::Gauss(a), g });
                }
            }
        }
        2 => {
            let h = one / ONE_PLUS_I;
            let c = h / w1 + h;
            near |= candidates_near_boundary(c, NEAR_BOUNDARY_TOL);
            let a = StepCoeff::J(JElem::new(GaussInt::ONE).expect("1 is odd"));
            for g in gauss_candidates_within_1(c) {
                let gc = g.to_cx();
                cands.push(Candidate { z: C2::new(gc * w1 - h * (one + w1), gc - h * (w2 + one)), a, g });
            }
        }
        k => return Err(CfracError::BadIndex(k)),
    }
    let best = cands.iter().min_by(|x, y| lex_cmp(x.z, y.z)).ok_or(CfracError::EmptyCandidates)?;
    let tie = cands.iter().any(|c| {
        !std::ptr::eq(c, best)
            && moduli_cmp(c.z.x2.norm(), best.z.x2.norm(), MODULUS_TOL) == Ordering::Equal
            && moduli_cmp(c.z.x1.norm(), best.z.x1.norm(), MODULUS_TOL) == Ordering::Equal
    });
    let k_next = match best.a {
        StepCoeff::Gauss(a) if a == GaussInt::ONE_PLUS_I => 2,
        _ => 1,
    };
    let next = TGState { w1: best.z.x1 / w1, w2: one / best.z.x2, k: k_next, coeffs: Some((best.a, best.g)) };
    Ok(TGStep { state: next, candidates: cands.len(), tie, near_boundary: near })
}

/// The Hurwitz step `w ↦ 1/w − [1/w]` with `[·]` the nearest Gaussian integer.
pub fn hurwitz_step(w: Cx) -> Result<(Cx, GaussInt), CfracError> {
    if w == Cx::new(0.0, 0.0) {
        return Err(CfracError::RationalDirection);
    }
    let inv = Cx::new(1.0, 0.0) / w;
    let g = crate::gauss::nearest_gauss(inv);
    Ok((inv - g.to_cx(), g))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitStatistics {
    /// `(1/n)·ln|y_n|` over the terms actually computed.
    pub mean_log_q_growth: f64,
    /// `x_k y_k` for the computed terms before the last, up to sign.
    pub product_samples: Vec<Cx>,
    pub terms: usize,
    /// The orbit ended early because `θ ∈ ℚ(i)`.
    pub truncated: bool,
}

/// Above this `|q|` the orbit continues with `T_G` instead of the lattice search.
pub const LATTICE_PATH_QMAX: f64 = 1e4;

/// Growth of the best approximation denominators and the products `x_k y_k`,
/// where `(x_k, y_k) = (p_k − q_kθ, q_k)`. Exploratory output.
///
/// The first terms come from the lattice search on `Λ_θ`. Beyond `|q| = 10⁴` the
/// last consecutive pair `(u, v)` is converted to `w₁ = v₁/u₁`, `w₂ = u₂/v₂` and
/// iterated with `T_G`: `ln|y|` grows by `−ln|w₂′|` and
/// `x y = w₁′·det′/(1 − w₁′w₂′)` where `det′` is the exact determinant of the new pair.
pub fn orbit_statistics(theta: Cx, n: usize) -> Result<OrbitStatistics, CfracError> {
    if n == 0 {
        return Err(CfracError::BadBound);
    }
    let chain = minimal_chain(theta, LATTICE_PATH_QMAX)?;
    let pts = &chain.points;
    let mut logs: Vec<f64> = Vec::with_capacity(n);
    let mut products: Vec<Cx> = Vec::with_capacity(n);
    for p in pts.iter().skip(1).take(n) {
        logs.push(p.x.x2.norm().ln());
        products.push(p.x.x1 * p.x.x2);
    }
    let mut truncated = chain.terminated && logs.len() < n;
    if logs.len() < n && !chain.terminated {
        let (u, v) = (&pts[pts.len() - 2], &pts[pts.len() - 1]);
        let mut det = pair_det(u, v);
        let mut state = TGState::new(v.x.x1 / u.x.x1, u.x.x2 / v.x.x2, det.norm() as u8);
        let mut log_y = v.x.x2.norm().ln();
        while logs.len() < n {
            let step = match tg_step(&state) {
                Ok(s) => s,
                Err(CfracError::RationalDirection) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            det = match step.state.coeffs {
                Some((StepCoeff::Gauss(a), _)) => a * det,
                _ => det.div_exact(GaussInt::ONE_PLUS_I).ok_or(CfracError::BadIndex(2))?,
            };
            state = step.state;
            log_y -= state.w2.norm().ln();
            logs.push(log_y);
            products.push(state.w1 * det.to_cx() / (Cx::new(1.0, 0.0) - state.w1 * state.w2));
        }
    }
    let terms = logs.len();
    products.truncate(terms.saturating_sub(1));
    let mean = if terms > 0 { logs[terms - 1] / terms as f64 } else { 0.0 };
    Ok(OrbitStatistics { mean_log_q_growth: mean, product_samples: products, terms, truncated })
}
