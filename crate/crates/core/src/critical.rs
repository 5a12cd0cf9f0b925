//! Critical coefficient pairs: the pairs `(g, h)` for which the distance filters
//! cannot rule out `|gu − hv|_{u,v} ≤ 1`.
//!
//! Over `ℤ[i]` a pair survives when `|h|·d(g/h, 𝒞) ≤ 1+ε` and `|g|·d(h/g, 𝒟) ≤ 1+ε`;
//! survivors are reduced to primitive pairs modulo units. Over `J` the filter is
//! `|h|·d(ig/h, 𝒯) ≤ 1+ε` and `|g|·d(h/g, 𝒯) ≤ 1+ε`, using `𝒞̄∖𝔻(−i,√2) ⊂ (−i)𝒯̄`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gauss::{Cx, GaussInt, JElem};
use crate::regions::{dist_c, dist_d, dist_t};

/// Coefficient modulus bound of the search.
pub const MAX_MODULUS: f64 = 6.0;
/// Default numerical safety margin.
pub const DEFAULT_EPSILON: f64 = 0.001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Zi,
    J,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Zi => "Zi",
            Ring::J => "J",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "Zi" | "zi" | "ZI" => Some(Ring::Zi),
            "J" | "j" => Some(Ring::J),
            _ => None,
        }
    }
}

/// A pair of coefficients. For `Ring::J` the stored integers are numerators `n`
/// of `n/(1+i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoeffPair {
    pub ring: Ring,
    pub g: GaussInt,
    pub h: GaussInt,
}

impl CoeffPair {
    pub fn zi(g: GaussInt, h: GaussInt) -> Self {
        CoeffPair { ring: Ring::Zi, g, h }
    }

    /// `(g/(1+i), h/(1+i))`; `None` unless both numerators are odd.
    pub fn j(g: GaussInt, h: GaussInt) -> Option<Self> {
        (JElem::new(g).is_some() && JElem::new(h).is_some()).then_some(CoeffPair { ring: Ring::J, g, h })
    }

    fn value(self, n: GaussInt) -> Cx {
        match self.ring {
            Ring::Zi => n.to_cx(),
            Ring::J => JElem::new(n).expect("odd numerator").to_cx(),
        }
    }

    pub fn g_value(self) -> Cx {
        self.value(self.g)
    }

    pub fn h_value(self) -> Cx {
        self.value(self.h)
    }

    /// The two filter quantities.
    pub fn filter_values(self) -> (f64, f64) {
        let (g, h) = (self.g_value(), self.h_value());
        match self.ring {
            Ring::Zi => (h.norm() * dist_c(g / h), g.norm() * dist_d(h / g)),
            Ring::J => (h.norm() * dist_t(Cx::new(0.0, 1.0) * g / h), g.norm() * dist_t(h / g)),
        }
    }

    pub fn passes(self, epsilon: f64) -> bool {
        let (a, b) = self.filter_values();
        a <= 1.0 + epsilon && b <= 1.0 + epsilon
    }

    /// `[g_re, g_im, h_re, h_im]` as complex values.
    pub fn values(self) -> [f64; 4] {
        let (g, h) = (self.g_value(), self.h_value());
        [g.re, g.im, h.re, h.im]
    }
}

/// All pairs of nonzero coefficients of modulus at most `max_modulus`.
pub fn enumerate_pairs(ring: Ring, max_modulus: f64) -> Vec<CoeffPair> {
    let elems = ring_elements(ring, max_modulus);
    let mut out = Vec::with_capacity(elems.len() * elems.len());
    for &g in &elems {
        for &h in &elems {
            out.push(CoeffPair { ring, g, h });
        }
    }
    out
}

/// Nonzero elements of modulus at most `bound`, as numerators for `J`.
fn ring_elements(ring: Ring, bound: f64) -> Vec<GaussInt> {
    let (scale2, r) = match ring {
        Ring::Zi => (1.0, bound.floor() as i64),
        Ring::J => (2.0, (bound * std::f64::consts::SQRT_2).floor() as i64),
    };
    let lim = bound * bound * scale2 + 1e-9;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let n = GaussInt::new(re, im);
            if n.is_zero() || (n.norm() as f64) > lim {
                continue;
            }
            if ring == Ring::J && JElem::new(n).is_none() {
                continue;
            }
            out.push(n);
        }
    }
    out
}

/// Divide by a gcd and rotate so the first nonzero entry has `re > 0, im ≥ 0`.
/// Pairs over `J` are only unit-normalized.
pub fn primitive_reduce(pair: CoeffPair) -> CoeffPair {
    let (mut g, mut h) = (pair.g, pair.h);
    if pair.ring == Ring::Zi {
        let d = GaussInt::gcd(g, h);
        if !d.is_zero() {
            g = g.div_exact(d).expect("gcd divides");
            h = h.div_exact(d).expect("gcd divides");
        }
    }
    let lead = if g.is_zero() { h } else { g };
    let (_, u) = lead.normalized();
    CoeffPair { ring: pair.ring, g: u * g, h: u * h }
}

/// Unit-normalized primitive pairs surviving the `ℤ[i]` filter.
pub fn filter_g1(epsilon: f64) -> BTreeSet<CoeffPair> {
    enumerate_pairs(Ring::Zi, MAX_MODULUS)
        .into_par_iter()
        .filter(|p| p.passes(epsilon))
        .map(primitive_reduce)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Pairs over `J` surviving the filter, without identification.
pub fn filter_g2(epsilon: f64) -> BTreeSet<CoeffPair> {
    enumerate_pairs(Ring::J, MAX_MODULUS)
        .into_par_iter()
        .filter(|p| p.passes(epsilon))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn filter(ring: Ring, epsilon: f64) -> BTreeSet<CoeffPair> {
    match ring {
        Ring::Zi => filter_g1(epsilon),
        Ring::J => filter_g2(epsilon),
    }
}

/// Pairs admitted at `epsilon` but not at zero margin.
pub fn margin_only(ring: Ring, epsilon: f64) -> BTreeSet<CoeffPair> {
    let exact = filter(ring, 0.0);
    filter(ring, epsilon).difference(&exact).copied().collect()
}

/// Coefficient pairs `(g, h)` of the finite emptiness test: nonzero `g, h ∈ ℤ[i]` with
/// `|g|·|h| ≤ √2` (48 pairs), and for index two also `g, h ∈ J` with `|g| = |h| = 1/√2` (16 pairs).
pub fn test_set(index: u8) -> Vec<(Cx, Cx)> {
    let small: Vec<GaussInt> = (-1..=1)
        .flat_map(|a| (-1..=1).map(move |b| GaussInt::new(a, b)))
        .filter(|g| !g.is_zero())
        .collect();
    let mut out: Vec<(Cx, Cx)> = small
        .iter()
        .flat_map(|&g| small.iter().map(move |&h| (g, h)))
        .filter(|(g, h)| g.norm() * h.norm() <= 2)
        .map(|(g, h)| (g.to_cx(), h.to_cx()))
        .collect();
    if index == 2 {
        for g in GaussInt::UNITS {
            for h in GaussInt::UNITS {
                let (g, h) = (JElem::new(g).expect("odd"), JElem::new(h).expect("odd"));
                out.push((g.to_cx(), h.to_cx()));
            }
        }
    }
    out
}

/// The open cylinder `|x₁| < 1, |x₂| < 1` around `u = (1, w₂)`, `v = (w₁, 1)` holds no
/// point `gu + hv` from the test set (relative slack `tol`).
pub fn finite_test_passes(w1: Cx, w2: Cx, index: u8, tol: f64) -> bool {
    test_set(index).into_iter().all(|(g, h)| {
        let x1 = g + h * w1;
        let x2 = g * w2 + h;
        x1.norm().max(x2.norm()) >= 1.0 - tol
    })
}

/// The reference list of the first critical set, as written.
pub fn reference_g1() -> Vec<CoeffPair> {
    let g = GaussInt::new;
    [
        (g(1, 0), g(0, -1)),
        (g(1, 0), g(1, 0)),
        (g(1, 0), g(0, 1)),
        (g(1, 0), g(-1, 0)),
        (g(1, 0), g(1, 1)),
        (g(1, 0), g(1, -1)),
        (g(1, 0), g(-1, 1)),
        (g(1, 0), g(-1, -1)),
        (g(1, 0), g(0, 2)),
        (g(1, 0), g(0, -2)),
        (g(1, 0), g(-2, 0)),
        (g(1, 1), g(1, 0)),
        (g(1, 1), g(0, 1)),
        (g(1, 1), g(2, -1)),
        (g(2, 0), g(1, 0)),
        (g(2, 0), g(1, -2)),
        (g(2, -1), g(0, -2)),
        (g(2, 1), g(2, -2)),
    ]
    .into_iter()
    .map(|(a, b)| CoeffPair::zi(a, b))
    .collect()
}

/// The 16 pairs `(a/(1+i), b/(1+i))`, `a, b ∈ 𝕌₄`.
pub fn reference_g2() -> Vec<CoeffPair> {
    let mut out = Vec::with_capacity(16);
    for a in GaussInt::UNITS {
        for b in GaussInt::UNITS {
            out.push(CoeffPair::j(a, b).expect("units are odd"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalExport {
    pub schema_version: u32,
    pub ring: String,
    pub epsilon: f64,
    pub count: usize,
    /// `[g_re, g_im, h_re, h_im, ring]`
    pub pairs: Vec<(f64, f64, f64, f64, String)>,
}

pub const CRITICAL_SCHEMA_VERSION: u32 = 1;

pub fn export(ring: Ring, epsilon: f64, pairs: &BTreeSet<CoeffPair>) -> CriticalExport {
    CriticalExport {
        schema_version: CRITICAL_SCHEMA_VERSION,
        ring: ring.name().to_string(),
        epsilon,
        count: pairs.len(),
        pairs: pairs
            .iter()
            .map(|p| {
                let [a, b, c, d] = p.values();
                (a, b, c, d, p.ring.name().to_string())
            })
            .collect(),
    }
}
