//! Gauss lattices in ℂ² given by a basis, cylinders, the `|·|_{u,v}` norm, the
//! lexicographic preorder, and brute-force oracles for minimal vectors.
//!
//! A lattice of index 2 is presented by a pair `(u, v)` with `|det(u, v)| = √2`
//! and consists of the points `gu + hv` with `(g, h) ∈ ℤ[i]² ∪ J²`. It is the free
//! module on `u` and `(u + v)/(1 + i)`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{arg, moduli_cmp, Cx, GaussInt, JElem, ONE_PLUS_I};

/// Tolerance for equality of coordinate moduli in the preorder and in the oracles.
pub const MODULUS_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("basis vectors are linearly dependent")]
    Degenerate,
    #[error("zero vector has no cylinder")]
    ZeroVector,
    #[error("vector is not a point of the lattice")]
    NotInLattice,
    #[error("vector is not minimal")]
    NotMinimal,
}

/// A vector of ℂ².
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct C2 {
    pub x1: Cx,
    pub x2: Cx,
}

impl C2 {
    pub const fn new(x1: Cx, x2: Cx) -> Self {
        C2 { x1, x2 }
    }

    pub fn from_re(a: f64, b: f64) -> Self {
        C2::new(Cx::new(a, 0.0), Cx::new(b, 0.0))
    }

    pub fn sup_norm(self) -> f64 {
        self.x1.norm().max(self.x2.norm())
    }

    pub fn is_zero(self) -> bool {
        self.x1 == Cx::new(0.0, 0.0) && self.x2 == Cx::new(0.0, 0.0)
    }

    /// Image under the diagonal flow `g_t`.
    pub fn flow(self, t: f64) -> Self {
        C2::new(self.x1 * t.exp(), self.x2 * (-t).exp())
    }
}

impl Add for C2 {
    type Output = C2;
    fn add(self, o: C2) -> C2 {
        C2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for C2 {
    type Output = C2;
    fn sub(self, o: C2) -> C2 {
        C2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for C2 {
    type Output = C2;
    fn neg(self) -> C2 {
        C2::new(-self.x1, -self.x2)
    }
}

impl Mul<C2> for Cx {
    type Output = C2;
    fn mul(self, x: C2) -> C2 {
        C2::new(self * x.x1, self * x.x2)
    }
}

/// `det_ℂ(u, v) = u₁v₂ − u₂v₁`.
pub fn det(u: C2, v: C2) -> Cx {
    u.x1 * v.x2 - u.x2 * v.x1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Index {
    One,
    Two,
}

impl Index {
    pub fn as_u8(self) -> u8 {
        match self {
            Index::One => 1,
            Index::Two => 2,
        }
    }

    pub fn from_u8(k: u8) -> Option<Self> {
        match k {
            1 => Some(Index::One),
            2 => Some(Index::Two),
            _ => None,
        }
    }

    /// Classify `|det(u, v)|` relative to a unimodular ambient lattice.
    pub fn from_det_modulus(m: f64) -> Option<Self> {
        if (m - 1.0).abs() < 1e-6 {
            Some(Index::One)
        } else if (m - std::f64::consts::SQRT_2).abs() < 1e-6 {
            Some(Index::Two)
        } else {
            None
        }
    }
}

/// A lattice point together with its integer coordinates in the free basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub x: C2,
    pub a: GaussInt,
    pub b: GaussInt,
}

/// A lattice `ℤ[i]u + ℤ[i]v` (index one) or `⟨u, v⟩_J` (index two).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis2 {
    pub u: C2,
    pub v: C2,
    pub index: Index,
}

impl Basis2 {
    pub fn new(u: C2, v: C2, index: Index) -> Result<Self, LatticeError> {
        if det(u, v).norm() == 0.0 || !det(u, v).norm().is_finite() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Basis2 { u, v, index })
    }

    pub fn det(&self) -> Cx {
        det(self.u, self.v)
    }

    /// A free ℤ[i]-basis of the lattice.
    pub fn free_basis(&self) -> (C2, C2) {
        match self.index {
            Index::One => (self.u, self.v),
            Index::Two => (self.u, (self.u + self.v).scale_div(ONE_PLUS_I)),
        }
    }

    /// Covolume: `|det|` of a free basis.
    pub fn covolume(&self) -> f64 {
        let (p, q) = self.free_basis();
        det(p, q).norm()
    }

    /// Point with free-basis coordinates `(a, b)`.
    pub fn point(&self, a: GaussInt, b: GaussInt) -> C2 {
        let (p, q) = self.free_basis();
        a.to_cx() * p + b.to_cx() * q
    }

    pub fn lattice_point(&self, a: GaussInt, b: GaussInt) -> LatticePoint {
        LatticePoint { x: self.point(a, b), a, b }
    }

    pub fn flow(&self, t: f64) -> Basis2 {
        Basis2 { u: self.u.flow(t), v: self.v.flow(t), index: self.index }
    }

    /// Free-basis coordinates of `x`, if `x` is a lattice point (up to a relative 1e-6).
    pub fn locate(&self, x: C2) -> Option<(GaussInt, GaussInt)> {
        let (p, q) = self.free_basis();
        let d = det(p, q);
        let a = det(x, q) / d;
        let b = det(p, x) / d;
        let (ga, gb) = (crate::gauss::nearest_gauss(a), crate::gauss::nearest_gauss(b));
        let scale = 1.0 + a.norm() + b.norm();
        if (a - ga.to_cx()).norm() < 1e-6 * scale && (b - gb.to_cx()).norm() < 1e-6 * scale {
            Some((ga, gb))
        } else {
            None
        }
    }
}

impl C2 {
    fn scale_div(self, c: Cx) -> C2 {
        C2::new(self.x1 / c, self.x2 / c)
    }
}

/// Two consecutive minimal vectors in the normal form
/// `u = (u₁, v₂w₂)`, `v = (u₁w₁, v₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinPair {
    pub u1: Cx,
    pub v2: Cx,
    pub w1: Cx,
    pub w2: Cx,
    pub index: Index,
}

impl MinPair {
    pub fn from_vectors(u: C2, v: C2, index: Index) -> Result<Self, LatticeError> {
        if u.x1.norm() == 0.0 || v.x2.norm() == 0.0 {
            return Err(LatticeError::Degenerate);
        }
        Ok(MinPair { u1: u.x1, v2: v.x2, w1: v.x1 / u.x1, w2: u.x2 / v.x2, index })
    }

    pub fn u(&self) -> C2 {
        C2::new(self.u1, self.v2 * self.w2)
    }

    pub fn v(&self) -> C2 {
        C2::new(self.u1 * self.w1, self.v2)
    }

    /// `|x|_{u,v} = max(|x₁|/max(|u₁|,|v₁|), |x₂|/max(|u₂|,|v₂|))`.
    pub fn norm(&self, x: C2) -> f64 {
        let (u, v) = (self.u(), self.v());
        let r1 = u.x1.norm().max(v.x1.norm());
        let r2 = u.x2.norm().max(v.x2.norm());
        (x.x1.norm() / r1).max(x.x2.norm() / r2)
    }
}

/// `x ≺ y`: `|x₂| < |y₂|`, or equal second moduli and `|x₁| ≤ |y₁|`.
pub fn lex_less(x: C2, y: C2) -> bool {
    match moduli_cmp(x.x2.norm(), y.x2.norm(), MODULUS_TOL) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => moduli_cmp(x.x1.norm(), y.x1.norm(), MODULUS_TOL) != Ordering::Greater,
    }
}

/// Total tie order `(|x₂|, |x₁|, arg x₂, arg x₁)` refining `≺`.
pub fn lex_cmp(x: C2, y: C2) -> Ordering {
    moduli_cmp(x.x2.norm(), y.x2.norm(), MODULUS_TOL)
        .then_with(|| moduli_cmp(x.x1.norm(), y.x1.norm(), MODULUS_TOL))
        .then_with(|| arg(x.x2).total_cmp(&arg(y.x2)))
        .then_with(|| arg(x.x1).total_cmp(&arg(y.x1)))
}

/// Nonzero Gaussian integers of modulus at most `bound`, plus zero.
fn gauss_ball(bound: f64) -> Vec<GaussInt> {
    let r = bound.floor() as i64;
    let b2 = bound * bound;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let g = GaussInt::new(re, im);
            if (g.norm() as f64) <= b2 + 1e-9 {
                out.push(g);
            }
        }
    }
    out
}

/// Elements of `J` of modulus at most `bound`.
pub fn j_ball(bound: f64) -> Vec<JElem> {
    let r = (bound * std::f64::consts::SQRT_2).floor() as i64;
    let lim = 2.0 * bound * bound;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            if let Some(j) = JElem::new(GaussInt::new(re, im)) {
                if (j.norm2() as f64) <= lim + 1e-9 {
                    out.push(j);
                }
            }
        }
    }
    out
}

/// All `gu + hv` with `g, h ∈ ℤ[i]` in the box `|Re|, |Im| ≤ coeff_bound`, and for index two also `g, h ∈ J` with `|g|, |h| ≤ coeff_bound`.
/// Zero is included.
pub fn enumerate_points(basis: &Basis2, coeff_bound: u32) -> Vec<C2> {
    let bound = coeff_bound as f64;
    let n = coeff_bound as i64;
    let zi: Vec<GaussInt> = (-n..=n).flat_map(|re| (-n..=n).map(move |im| GaussInt::new(re, im))).collect();
    let mut out = Vec::with_capacity(zi.len() * zi.len());
    for &g in &zi {
        for &h in &zi {
            out.push(g.to_cx() * basis.u + h.to_cx() * basis.v);
        }
    }
    if basis.index == Index::Two {
        let j = j_ball(bound);
        for &g in &j {
            for &h in &j {
                out.push(g.to_cx() * basis.u + h.to_cx() * basis.v);
            }
        }
    }
    out
}

/// A coefficient bound guaranteeing that `enumerate_points` reaches every lattice
/// point of the closed cylinder with radii `r1`, `r2`, by Cramer's rule.
pub fn sound_coeff_bound(basis: &Basis2, r1: f64, r2: f64) -> u32 {
    let (u, v) = (basis.u, basis.v);
    let d = basis.det().norm();
    let g = (v.x2.norm() * r1 + v.x1.norm() * r2) / d;
    let h = (u.x2.norm() * r1 + u.x1.norm() * r2) / d;
    g.max(h).ceil() as u32
}

/// Every lattice point in the closed cylinder `|x₁| ≤ r1, |x₂| ≤ r2` (zero included),
/// with its free-basis coordinates. Exhaustive: the outer coefficient is bounded by
/// Cramer's rule and the inner one by the first-coordinate disk.
pub fn points_in_cylinder(basis: &Basis2, r1: f64, r2: f64) -> Vec<LatticePoint> {
    let (p, q) = basis.free_basis();
    let d = det(p, q).norm();
    let (r1, r2) = (r1 * (1.0 + 1e-12), r2 * (1.0 + 1e-12));
    // b = det(p, x)/det(p, q)
    let bmax = (p.x1.norm() * r2 + p.x2.norm() * r1) / d;
    // Solve for a through the coordinate where p is comparatively large.
    let use_first = p.x1.norm() * r2 >= p.x2.norm() * r1;
    let mut out = Vec::new();
    for b in gauss_ball(bmax) {
        let (pc, qc, r) = if use_first { (p.x1, q.x1, r1) } else { (p.x2, q.x2, r2) };
        let centre = -(b.to_cx() * qc) / pc;
        let rho = r / pc.norm();
        let (lo_re, hi_re) = ((centre.re - rho).ceil() as i64, (centre.re + rho).floor() as i64);
        let (lo_im, hi_im) = ((centre.im - rho).ceil() as i64, (centre.im + rho).floor() as i64);
        for re in lo_re..=hi_re {
            for im in lo_im..=hi_im {
                let a = GaussInt::new(re, im);
                let x = a.to_cx() * p + b.to_cx() * q;
                if x.x1.norm() <= r1 && x.x2.norm() <= r2 {
                    out.push(LatticePoint { x, a, b });
                }
            }
        }
    }
    out
}

fn check_member(basis: &Basis2, x: C2) -> Result<(), LatticeError> {
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    basis.locate(x).map(|_| ()).ok_or(LatticeError::NotInLattice)
}

fn strictly_inside_cylinder_of(y: C2, x: C2) -> bool {
    let (a1, a2) = (y.x1.norm(), y.x2.norm());
    let (b1, b2) = (x.x1.norm(), x.x2.norm());
    let le1 = moduli_cmp(a1, b1, MODULUS_TOL) != Ordering::Greater;
    let le2 = moduli_cmp(a2, b2, MODULUS_TOL) != Ordering::Greater;
    let lt1 = moduli_cmp(a1, b1, MODULUS_TOL) == Ordering::Less;
    let lt2 = moduli_cmp(a2, b2, MODULUS_TOL) == Ordering::Less;
    le1 && le2 && (lt1 || lt2) && !y.is_zero()
}

/// Minimality of `x` checked against `enumerate_points(basis, coeff_bound)`.
pub fn oracle_is_minimal(basis: &Basis2, x: C2, coeff_bound: u32) -> Result<bool, LatticeError> {
    check_member(basis, x)?;
    Ok(!enumerate_points(basis, coeff_bound).into_iter().any(|y| strictly_inside_cylinder_of(y, x)))
}

/// Emptiness of the open cylinder `C(u, v)` among `enumerate_points(basis, coeff_bound)`,
/// after checking that `u` and `v` are minimal.
pub fn oracle_consecutive(basis: &Basis2, u: C2, v: C2, coeff_bound: u32) -> Result<bool, LatticeError> {
    if !oracle_is_minimal(basis, u, coeff_bound)? || !oracle_is_minimal(basis, v, coeff_bound)? {
        return Err(LatticeError::NotMinimal);
    }
    let r1 = u.x1.norm().max(v.x1.norm()) * (1.0 - MODULUS_TOL);
    let r2 = u.x2.norm().max(v.x2.norm()) * (1.0 - MODULUS_TOL);
    Ok(!enumerate_points(basis, coeff_bound)
        .into_iter()
        .any(|y| !y.is_zero() && y.x1.norm() < r1 && y.x2.norm() < r2))
}

/// Minimality of `x`, exhaustive over the cylinder `C(x)`.
pub fn is_minimal(basis: &Basis2, x: C2) -> Result<bool, LatticeError> {
    check_member(basis, x)?;
    let (r1, r2) = (x.x1.norm(), x.x2.norm());
    Ok(!points_in_cylinder(basis, r1, r2).into_iter().any(|y| strictly_inside_cylinder_of(y.x, x)))
}

/// True when no nonzero lattice point has `|y₁| < r1` and `|y₂| < r2` (relative slack `MODULUS_TOL`).
pub fn open_cylinder_is_empty(basis: &Basis2, r1: f64, r2: f64) -> bool {
    let (s1, s2) = (r1 * (1.0 - MODULUS_TOL), r2 * (1.0 - MODULUS_TOL));
    !points_in_cylinder(basis, r1, r2)
        .into_iter()
        .any(|y| !y.x.is_zero() && y.x.x1.norm() < s1 && y.x.x2.norm() < s2)
}

/// Consecutiveness of two minimal vectors, exhaustive.
pub fn is_consecutive(basis: &Basis2, u: C2, v: C2) -> Result<bool, LatticeError> {
    if !is_minimal(basis, u)? || !is_minimal(basis, v)? {
        return Err(LatticeError::NotMinimal);
    }
    let r1 = u.x1.norm().max(v.x1.norm());
    let r2 = u.x2.norm().max(v.x2.norm());
    Ok(open_cylinder_is_empty(basis, r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(index: Index) -> Basis2 {
        let u = C2::from_re(1.0, 0.0);
        let v = C2::from_re(0.0, 1.0);
        match index {
            Index::One => Basis2::new(u, v, index).unwrap(),
            // a pair with |det| = √2 whose J-hull is a lattice
            Index::Two => Basis2::new(u, ONE_PLUS_I * v, index).unwrap(),
        }
    }

    fn theta_lattice(theta: Cx) -> Basis2 {
        Basis2::new(C2::from_re(1.0, 0.0), C2::new(-theta, Cx::new(1.0, 0.0)), Index::One).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let b = identity(Index::One);
        assert_eq!(enumerate_points(&b, 0).len(), 1);
        assert_eq!(enumerate_points(&b, 1).len(), 81);
        let b2 = Basis2 { index: Index::Two, ..b };
        assert_eq!(enumerate_points(&b2, 1).len(), 81 + 16);
        assert_eq!(j_ball(1.0).len(), 4);
    }

    #[test]
    fn norm_uv_examples() {
        let pair = MinPair { u1: Cx::new(1.0, 0.0), v2: Cx::new(1.0, 0.0), w1: Cx::new(0.0, 0.0), w2: Cx::new(0.0, 0.0), index: Index::One };
        assert_eq!(pair.norm(pair.u()), 1.0);
        assert_eq!(pair.norm(C2::default()), 0.0);
        assert_eq!(pair.norm(pair.u() - pair.v()), 1.0);
    }

    #[test]
    fn lex_examples() {
        let one = Cx::new(1.0, 0.0);
        let zero = Cx::new(0.0, 0.0);
        assert!(lex_less(C2::new(one, zero), C2::new(zero, one)));
        let x = C2::new(Cx::new(0.3, 0.1), one);
        assert!(lex_less(x, x));
        assert!(!lex_less(C2::from_re(2.0, 1.0), C2::from_re(1.0, 1.0)));
    }

    #[test]
    fn minimality_examples() {
        let b = identity(Index::One);
        assert_eq!(oracle_is_minimal(&b, C2::from_re(1.0, 1.0), 2), Ok(false));
        assert_eq!(oracle_is_minimal(&b, C2::from_re(1.0, 0.0), 2), Ok(true));
        assert_eq!(oracle_is_minimal(&b, C2::default(), 2), Err(LatticeError::ZeroVector));
        assert_eq!(oracle_is_minimal(&b, C2::from_re(0.5, 0.0), 2), Err(LatticeError::NotInLattice));

        let theta = Cx::new(0.7, 0.3);
        let bt = theta_lattice(theta);
        let x = C2::new(Cx::new(1.0, 0.0) - theta, Cx::new(1.0, 0.0));
        assert_eq!(oracle_is_minimal(&bt, x, 5), Ok(true));
        assert_eq!(is_minimal(&bt, x), Ok(true));
    }

    #[test]
    fn consecutive_examples() {
        let b = identity(Index::One);
        assert_eq!(oracle_consecutive(&b, C2::from_re(1.0, 0.0), C2::from_re(0.0, 1.0), 2), Ok(true));

        let theta = Cx::new(0.7, 0.3);
        let bt = theta_lattice(theta);
        let u = C2::from_re(1.0, 0.0);
        let v = C2::new(Cx::new(1.0, 0.0) - theta, Cx::new(1.0, 0.0));
        assert_eq!(oracle_consecutive(&bt, u, v, 5), Ok(true));
        assert_eq!(is_consecutive(&bt, u, v), Ok(true));
    }

    #[test]
    fn cylinder_search_matches_box_enumeration() {
        let bt = theta_lattice(Cx::new(0.31, 0.77));
        let (r1, r2) = (0.4, 3.0);
        let bound = sound_coeff_bound(&bt, r1, r2);
        let mut a: Vec<_> = enumerate_points(&bt, bound)
            .into_iter()
            .filter(|y| y.x1.norm() <= r1 && y.x2.norm() <= r2)
            .map(|y| ((y.x1.re * 1e9).round() as i64, (y.x1.im * 1e9).round() as i64, (y.x2.re * 1e9).round() as i64, (y.x2.im * 1e9).round() as i64))
            .collect();
        let mut b: Vec<_> = points_in_cylinder(&bt, r1, r2)
            .into_iter()
            .map(|y| ((y.x.x1.re * 1e9).round() as i64, (y.x.x1.im * 1e9).round() as i64, (y.x.x2.re * 1e9).round() as i64, (y.x.x2.im * 1e9).round() as i64))
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn index_two_free_basis_is_unimodular() {
        let b = identity(Index::Two);
        assert!((b.det().norm() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((b.covolume() - 1.0).abs() < 1e-15);
    }
}
