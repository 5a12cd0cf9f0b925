//! Gaussian integers, the coset set `J`, the dihedral group `D8` and the
//! complex helpers shared by the rest of the crate.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Double precision complex number.
pub type Cx = Complex64;

/// `1 + i`, the generator of the ideal `I`.
pub const ONE_PLUS_I: Cx = Cx::new(1.0, 1.0);

/// Threshold below which `1 - |g - w|` is reported as a near-boundary candidate.
pub const CANDIDATE_TOL: f64 = 1e-12;

/// Argument of `z` in `[0, 2π)`. The argument of zero is 0.
pub fn arg(z: Cx) -> f64 {
    let a = z.im.atan2(z.re);
    if a >= 0.0 {
        return a;
    }
    let b = a + TAU;
    if b >= TAU {
        0.0
    } else {
        b
    }
}

/// True when the direction `a` lies on the counter-clockwise arc from `lo` to `hi`.
/// `lo` may be negative and `hi - lo` must lie in `[0, 2π]`.
pub fn angle_in(a: f64, lo: f64, hi: f64, tol: f64) -> bool {
    let span = hi - lo;
    let d = (a - lo).rem_euclid(TAU);
    d <= span + tol || d >= TAU - tol
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> Cx {
    Cx::new(theta.cos(), theta.sin())
}

/// Exact Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };
    pub const ONE_PLUS_I: GaussInt = GaussInt { re: 1, im: 1 };
    /// The unit group, ordered as powers of `i`.
    pub const UNITS: [GaussInt; 4] = [
        GaussInt { re: 1, im: 0 },
        GaussInt { re: 0, im: 1 },
        GaussInt { re: -1, im: 0 },
        GaussInt { re: 0, im: -1 },
    ];

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        (self.norm() as f64).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Membership in the ideal `I = (1+i)ℤ[i]`.
    pub fn in_ideal(self) -> bool {
        (self.re + self.im).rem_euclid(2) == 0
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn to_cx(self) -> Cx {
        Cx::new(self.re as f64, self.im as f64)
    }

    /// `i^k`.
    pub fn unit(k: i64) -> Self {
        Self::UNITS[k.rem_euclid(4) as usize]
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(self, d: GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let num = self * d.conj();
        if num.re % n == 0 && num.im % n == 0 {
            Some(GaussInt::new(num.re / n, num.im / n))
        } else {
            None
        }
    }

    /// Euclidean division with the quotient rounded into the half-open square.
    pub fn div_rem(self, d: GaussInt) -> (GaussInt, GaussInt) {
        let n = d.norm();
        assert!(n != 0, "division by zero Gaussian integer");
        let num = self * d.conj();
        let round = |x: i64| (2 * x + n).div_euclid(2 * n);
        let q = GaussInt::new(round(num.re), round(num.im));
        (q, self - q * d)
    }

    /// A greatest common divisor, unit-normalized. `gcd(0, 0) = 0`.
    pub fn gcd(a: GaussInt, b: GaussInt) -> GaussInt {
        let (mut x, mut y) = (a, b);
        while !y.is_zero() {
            let (_, r) = x.div_rem(y);
            x = y;
            y = r;
        }
        x.normalized().0
    }

    /// The associate with `re > 0, im ≥ 0` and the unit `α` such that `α·self` is that associate.
    pub fn normalized(self) -> (GaussInt, GaussInt) {
        if self.is_zero() {
            return (self, GaussInt::ONE);
        }
        for u in Self::UNITS {
            let z = u * self;
            if z.re > 0 && z.im >= 0 {
                return (z, u);
            }
        }
        unreachable!("every nonzero Gaussian integer has an associate in the first quadrant")
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// An element `numerator / (1+i)` of `J`; the numerator lies outside `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JElem {
    numerator: GaussInt,
}

impl JElem {
    pub fn new(numerator: GaussInt) -> Option<Self> {
        if numerator.in_ideal() {
            None
        } else {
            Some(JElem { numerator })
        }
    }

    pub fn numerator(self) -> GaussInt {
        self.numerator
    }

    /// Twice the squared modulus, an odd integer.
    pub fn norm2(self) -> i64 {
        self.numerator.norm()
    }

    pub fn abs(self) -> f64 {
        (self.norm2() as f64 / 2.0).sqrt()
    }

    pub fn to_cx(self) -> Cx {
        let n = self.numerator;
        // n(1-i)/2
        Cx::new((n.re + n.im) as f64 / 2.0, (n.im - n.re) as f64 / 2.0)
    }
}

/// The point `p` with `z - p ∈ [-½,½) + [-½,½)i`.
pub fn nearest_gauss(z: Cx) -> GaussInt {
    GaussInt::new((z.re + 0.5).floor() as i64, (z.im + 0.5).floor() as i64)
}

/// All `g` with `|g - w| < 1`, sorted by `(|g - w|, arg(g - w))`.
pub fn gauss_candidates_within_1(w: Cx) -> Vec<GaussInt> {
    let (r0, i0) = (w.re.floor() as i64, w.im.floor() as i64);
    let mut out: Vec<(f64, f64, GaussInt)> = Vec::with_capacity(4);
    for re in r0 - 1..=r0 + 2 {
        for im in i0 - 1..=i0 + 2 {
            let g = GaussInt::new(re, im);
            let d = g.to_cx() - w;
            let m = d.norm();
            if m < 1.0 {
                out.push((m, arg(d), g));
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out.into_iter().map(|t| t.2).collect()
}

/// True when some candidate sits within `tol` of the strict bound `|g - w| < 1`,
/// on either side.
pub fn candidates_near_boundary(w: Cx, tol: f64) -> bool {
    let (r0, i0) = (w.re.floor() as i64, w.im.floor() as i64);
    (r0 - 1..=r0 + 2).any(|re| {
        (i0 - 1..=i0 + 2).any(|im| ((GaussInt::new(re, im).to_cx() - w).norm() - 1.0).abs() < tol)
    })
}

/// An element of the dihedral group of order 8: `z ↦ i^rot · z` or `z ↦ i^rot · z̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D8 {
    pub rot: u8,
    pub conj: bool,
}

impl D8 {
    pub const IDENTITY: D8 = D8 { rot: 0, conj: false };

    /// The eight elements in a fixed order: rotations first, then reflections.
    pub const ALL: [D8; 8] = [
        D8 { rot: 0, conj: false },
        D8 { rot: 1, conj: false },
        D8 { rot: 2, conj: false },
        D8 { rot: 3, conj: false },
        D8 { rot: 0, conj: true },
        D8 { rot: 1, conj: true },
        D8 { rot: 2, conj: true },
        D8 { rot: 3, conj: true },
    ];

    pub fn new(rot: u8, conj: bool) -> Self {
        D8 { rot: rot % 4, conj }
    }

    /// `φ(1)`, a unit.
    pub fn at_one(self) -> Cx {
        GaussInt::unit(self.rot as i64).to_cx()
    }

    pub fn apply(self, z: Cx) -> Cx {
        let z = if self.conj { z.conj() } else { z };
        match self.rot {
            0 => z,
            1 => Cx::new(-z.im, z.re),
            2 => -z,
            _ => Cx::new(z.im, -z.re),
        }
    }

    pub fn apply_gauss(self, g: GaussInt) -> GaussInt {
        let g = if self.conj { g.conj() } else { g };
        GaussInt::unit(self.rot as i64) * g
    }

    /// `self ∘ other`.
    pub fn compose(self, other: D8) -> D8 {
        if self.conj {
            D8::new((self.rot + 4 - other.rot) % 4, !other.conj)
        } else {
            D8::new((self.rot + other.rot) % 4, other.conj)
        }
    }

    pub fn inverse(self) -> D8 {
        if self.conj {
            self
        } else {
            D8::new((4 - self.rot) % 4, false)
        }
    }

    /// The induced action on coordinate pairs: `(w1, w2) ↦ (φ(w1), φ(w2)/φ(1)²)`.
    pub fn act_pair(self, w1: Cx, w2: Cx) -> (Cx, Cx) {
        let one = self.at_one();
        (self.apply(w1), self.apply(w2) / (one * one))
    }
}

/// Compare two moduli as equal when they differ by at most `tol` relative to the larger.
pub fn moduli_cmp(a: f64, b: f64, tol: f64) -> Ordering {
    let scale = a.abs().max(b.abs());
    if (a - b).abs() <= tol * scale {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// The unit `i^k` closest in direction to `z`.
pub fn nearest_unit(z: Cx) -> GaussInt {
    let k = (arg(z) / FRAC_PI_2).round() as i64;
    GaussInt::unit(k)
}
