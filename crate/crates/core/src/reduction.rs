//! Gauss reduction of rank-2 ℤ[i]-lattices for the weighted norms
//! `|z|_t² = |t z₁|² + |z₂/t|²`, and the bounded search for the successor of a
//! minimal vector.

use std::cmp::Ordering;
use std::f64::consts::PI;

use thiserror::Error;

use crate::gauss::{nearest_gauss, Cx, GaussInt};
use crate::lattice::{det, lex_cmp, Basis2, LatticePoint, C2, MODULUS_TOL};

/// Below this first-coordinate modulus a minimal vector is treated as lying on the axis.
pub const RATIONAL_TOL: f64 = 1e-12;

/// Squared radius of the coefficient ball searched by [`next_minimal`].
pub const SEARCH_RADIUS_SQ: i64 = 23;

const MAX_REDUCTION_STEPS: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("basis vectors are linearly dependent")]
    Degenerate,
    #[error("reduction did not terminate")]
    NoConvergence,
    #[error("minimal vector lies on the second axis; it has no successor")]
    NoSuccessor,
    #[error("no lattice point found in the open cylinder")]
    EmptySearch,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedNorm {
    t: f64,
}

impl WeightedNorm {
    pub fn new(t: f64) -> Option<Self> {
        (t > 0.0 && t.is_finite()).then_some(WeightedNorm { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn norm_sqr(&self, x: C2) -> f64 {
        let t2 = self.t * self.t;
        t2 * x.x1.norm_sqr() + x.x2.norm_sqr() / t2
    }

    pub fn norm(&self, x: C2) -> f64 {
        self.norm_sqr(x).sqrt()
    }

    /// Hermitian product, linear in the first argument.
    pub fn inner(&self, x: C2, y: C2) -> Cx {
        let t2 = self.t * self.t;
        x.x1 * y.x1.conj() * t2 + x.x2 * y.x2.conj() / t2
    }
}

/// A reduced basis `(w, wp)` with coordinates relative to the input basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedBasis {
    pub w: LatticePoint,
    pub wp: LatticePoint,
}

impl ReducedBasis {
    /// Determinant of the change of basis; a unit.
    pub fn transform_det(&self) -> GaussInt {
        self.w.a * self.wp.b - self.w.b * self.wp.a
    }
}

fn combine(p: C2, q: C2, a: GaussInt, b: GaussInt) -> C2 {
    a.to_cx() * p + b.to_cx() * q
}

/// Gauss reduction of the free basis `(p, q)` for `norm`.
pub fn gauss_reduce(p: C2, q: C2, norm: WeightedNorm) -> Result<ReducedBasis, ReductionError> {
    if det(p, q).norm() == 0.0 {
        return Err(ReductionError::Degenerate);
    }
    let mut w = LatticePoint { x: p, a: GaussInt::ONE, b: GaussInt::ZERO };
    let mut wp = LatticePoint { x: q, a: GaussInt::ZERO, b: GaussInt::ONE };
    if norm.norm_sqr(wp.x) < norm.norm_sqr(w.x) {
        std::mem::swap(&mut w, &mut wp);
    }
    for _ in 0..MAX_REDUCTION_STEPS {
        let mu = norm.inner(wp.x, w.x) / norm.norm_sqr(w.x);
        let c = nearest_gauss(mu);
        if !c.is_zero() {
            wp.a = wp.a - c * w.a;
            wp.b = wp.b - c * w.b;
            wp.x = combine(p, q, wp.a, wp.b);
        }
        if norm.norm_sqr(w.x) <= norm.norm_sqr(wp.x) {
            return Ok(ReducedBasis { w, wp });
        }
        std::mem::swap(&mut w, &mut wp);
    }
    Err(ReductionError::NoConvergence)
}

/// A shortest vector for the standard Hermitian norm; it is a minimal vector.
pub fn first_minimal(basis: &Basis2) -> Result<LatticePoint, ReductionError> {
    let (p, q) = basis.free_basis();
    Ok(gauss_reduce(p, q, WeightedNorm { t: 1.0 })?.w)
}

/// The successor of a minimal vector together with search diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Successor {
    pub point: LatticePoint,
    /// Another candidate, not a unit multiple of `point`, has the same coordinate moduli.
    pub tie: bool,
}

fn unit_multiple(x: &LatticePoint, y: &LatticePoint) -> bool {
    GaussInt::UNITS.iter().any(|&e| e * x.a == y.a && e * x.b == y.b)
}

/// Successor search with an explicit squared coefficient radius.
pub fn next_minimal_with_radius(basis: &Basis2, u: C2, radius_sq: i64) -> Result<Successor, ReductionError> {
    let u1 = u.x1.norm();
    if u1 < RATIONAL_TOL {
        return Err(ReductionError::NoSuccessor);
    }
    let (p, q) = basis.free_basis();
    let s = (4.0 / PI * det(p, q).norm()).sqrt();
    let norm = WeightedNorm::new(s / u1).ok_or(ReductionError::Degenerate)?;
    let red = gauss_reduce(p, q, norm)?;
    let bound = u1 * (1.0 - MODULUS_TOL);
    let r = (radius_sq as f64).sqrt().floor() as i64;
    let mut cands: Vec<LatticePoint> = Vec::new();
    for zr in -r..=r {
        for zi in -r..=r {
            let z = GaussInt::new(zr, zi);
            let rest = radius_sq - z.norm();
            if rest <= 0 {
                continue;
            }
            let r2 = (rest as f64).sqrt().ceil() as i64;
            for yr in -r2..=r2 {
                for yi in -r2..=r2 {
                    let z2 = GaussInt::new(yr, yi);
                    if z.norm() + z2.norm() >= radius_sq || (z.is_zero() && z2.is_zero()) {
                        continue;
                    }
                    let a = z * red.w.a + z2 * red.wp.a;
                    let b = z * red.w.b + z2 * red.wp.b;
                    let x = combine(p, q, a, b);
                    if x.x1.norm() < bound {
                        cands.push(LatticePoint { x, a, b });
                    }
                }
            }
        }
    }
    let best = *cands.iter().min_by(|x, y| lex_cmp(x.x, y.x)).ok_or(ReductionError::EmptySearch)?;
    let tie = cands.iter().any(|c| {
        lex_cmp(c.x, best.x) != Ordering::Less
            && crate::gauss::moduli_cmp(c.x.x2.norm(), best.x.x2.norm(), MODULUS_TOL) == Ordering::Equal
            && crate::gauss::moduli_cmp(c.x.x1.norm(), best.x.x1.norm(), MODULUS_TOL) == Ordering::Equal
            && !unit_multiple(&best, c)
    });
    Ok(Successor { point: best, tie })
}

/// The minimal vector following `u`: the `≺`-least lattice point of the open
/// cylinder `|x₁| < |u₁|`, found among `zw + z'w'` with `|z|² + |z'|² < 23` where
/// `(w, w')` is reduced for `|·|_t`, `t = s/|u₁|`, `s = √(4|det|/π)`.
pub fn next_minimal(basis: &Basis2, u: C2) -> Result<Successor, ReductionError> {
    next_minimal_with_radius(basis, u, SEARCH_RADIUS_SQ)
}
