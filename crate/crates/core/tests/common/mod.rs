//! Independent oracles shared by the integration and acceptance tests. Nothing here
//! calls into the code under test beyond plain data types.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use gausscf::gauss::{Cx, GaussInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_disk(rng: &mut impl Rng) -> Cx {
    loop {
        let z = Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() < 1.0 {
            return z;
        }
    }
}

/// Uniform in the open sector `|z| < 1`, `0 ≤ arg z ≤ π/4`, away from zero.
pub fn uniform_sector(rng: &mut impl Rng) -> Cx {
    loop {
        let z = uniform_disk(rng);
        if z.im >= 0.0 && z.im <= z.re && z.norm() > 1e-9 {
            return z;
        }
    }
}

// ---------------------------------------------------------------------------
// Best approximations straight from the definition.

/// Best approximation vectors `(p, q)` with `0 < |q| ≤ q_max`, by scanning every
/// denominator: `(p, q)` qualifies when `|p − qθ| < |a − bθ|` for `0 < |b| < |q|` and
/// `|p − qθ| ≤ |a − bθ|` for `0 < |b| ≤ |q|`. One representative per class,
/// `Re q > 0`, `Im q ≥ 0`; sorted by `|q|`.
pub fn best_approx_brute_force(theta: Cx, q_max: i64) -> Vec<(GaussInt, GaussInt, f64)> {
    // |q|² -> (best error at this modulus, all (p, q) reaching it)
    let mut levels: BTreeMap<i64, Vec<(f64, GaussInt, GaussInt)>> = BTreeMap::new();
    for re in 1..=q_max {
        for im in 0..=q_max {
            let n = re * re + im * im;
            if n > q_max * q_max {
                continue;
            }
            let q = Cx::new(re as f64, im as f64);
            let c = q * theta;
            let (mut best, mut p) = (f64::INFINITY, GaussInt::ZERO);
            for ar in c.re.floor() as i64 - 1..=c.re.floor() as i64 + 2 {
                for ai in c.im.floor() as i64 - 1..=c.im.floor() as i64 + 2 {
                    let e = (Cx::new(ar as f64, ai as f64) - c).norm();
                    if e < best {
                        best = e;
                        p = GaussInt::new(ar, ai);
                    }
                }
            }
            levels.entry(n).or_default().push((best, p, GaussInt::new(re, im)));
        }
    }
    let mut below = f64::INFINITY;
    let mut out = Vec::new();
    for (_, entries) in levels {
        let level_min = entries.iter().map(|e| e.0).fold(f64::INFINITY, f64::min);
        for &(e, p, q) in &entries {
            if e < below && e <= level_min {
                out.push((p, q, e));
            }
        }
        below = below.min(level_min);
        if below == 0.0 {
            break;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Region distances from a discretized boundary.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    C,
    D,
    T,
}

/// Defining inequalities `f(z) ≤ 0` of the closure, one per boundary curve.
fn constraints(region: Region) -> [fn(Cx) -> f64; 3] {
    match region {
        Region::C => [|z| z.norm() - 1.0, |z| -z.im, |z| z.im - z.re],
        Region::D => [
            |z| z.norm() - 1.0,
            |z| 1.0 - (z - Cx::new(1.0, 0.0)).norm(),
            |z| 1.0 - (z - Cx::new(1.0, -1.0)).norm(),
        ],
        Region::T => [
            |z| z.norm() - 1.0,
            |z| SQRT_2 - (z - Cx::new(1.0, 0.0)).norm(),
            |z| SQRT_2 - (z + Cx::new(0.0, 1.0)).norm(),
        ],
    }
}

/// Closure membership from the defining inequalities.
pub fn in_closure(region: Region, z: Cx) -> bool {
    constraints(region).iter().all(|f| f(z) <= 0.0)
}

/// Membership for a point of the zero set of constraint `skip`: that inequality is
/// taken as satisfied so rounding on the curve itself does not fragment it.
fn on_boundary(region: Region, skip: usize, z: Cx) -> bool {
    constraints(region).iter().enumerate().all(|(i, f)| i == skip || f(z) <= 0.0)
}

enum Curve {
    Circle(Cx, f64),
    Segment(Cx, Cx),
}

impl Curve {
    fn at(&self, t: f64) -> Cx {
        match *self {
            Curve::Circle(c, r) => c + r * Cx::from_polar(1.0, 2.0 * std::f64::consts::PI * t),
            Curve::Segment(a, b) => a + (b - a) * t,
        }
    }
}

/// The zero set of each constraint, in the same order.
fn curves(region: Region) -> [Curve; 3] {
    let unit = Curve::Circle(Cx::new(0.0, 0.0), 1.0);
    match region {
        Region::C => [
            unit,
            Curve::Segment(Cx::new(-2.0, 0.0), Cx::new(2.0, 0.0)),
            Curve::Segment(-2.0 * Cx::from_polar(1.0, FRAC_PI_4), 2.0 * Cx::from_polar(1.0, FRAC_PI_4)),
        ],
        Region::D => [unit, Curve::Circle(Cx::new(1.0, 0.0), 1.0), Curve::Circle(Cx::new(1.0, -1.0), 1.0)],
        Region::T => [unit, Curve::Circle(Cx::new(1.0, 0.0), SQRT_2), Curve::Circle(Cx::new(0.0, -1.0), SQRT_2)],
    }
}

/// The boundary of a region as polylines: each defining curve is sampled at `n`
/// parameters, the runs of samples satisfying the other constraints are kept, and the
/// ends of each run are pushed onto the true corner by bisection.
pub fn boundary_polylines(region: Region, n: usize) -> Vec<Vec<Cx>> {
    let mut out = Vec::new();
    for (skip, curve) in curves(region).iter().enumerate() {
        let keep = |t: f64| on_boundary(region, skip, curve.at(t));
        let inside: Vec<bool> = (0..=n).map(|j| keep(j as f64 / n as f64)).collect();
        let refine = |mut t_in: f64, mut t_out: f64| {
            for _ in 0..60 {
                let mid = 0.5 * (t_in + t_out);
                if keep(mid) {
                    t_in = mid;
                } else {
                    t_out = mid;
                }
            }
            curve.at(t_in)
        };
        let mut j = 0;
        while j <= n {
            if !inside[j] {
                j += 1;
                continue;
            }
            let start = j;
            while j <= n && inside[j] {
                j += 1;
            }
            let end = j - 1;
            let mut line = Vec::new();
            if start > 0 {
                line.push(refine(start as f64 / n as f64, (start - 1) as f64 / n as f64));
            }
            line.extend((start..=end).map(|i| curve.at(i as f64 / n as f64)));
            if end < n {
                line.push(refine(end as f64 / n as f64, (end + 1) as f64 / n as f64));
            }
            out.push(line);
        }
    }
    out
}

fn segment_distance(z: Cx, a: Cx, b: Cx) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

pub struct PolylineOracle {
    region: Region,
    lines: Vec<Vec<Cx>>,
}

impl PolylineOracle {
    pub fn new(region: Region, n: usize) -> Self {
        PolylineOracle { region, lines: boundary_polylines(region, n) }
    }

    pub fn vertex_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    pub fn distance(&self, z: Cx) -> f64 {
        if in_closure(self.region, z) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for line in &self.lines {
            for w in line.windows(2) {
                best = best.min(segment_distance(z, w[0], w[1]));
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// Open cylinder around u = (1, w₂), v = (w₁, 1).

/// Some nonzero point of `ℤ[i]u + ℤ[i]v` (index 1) or of that lattice together with
/// `(u + v)/(1+i)` (index 2) has `|x₁| < 1` and `|x₂| < 1`. Coefficients are bounded
/// by Cramer's rule and scanned in a box.
pub fn cylinder_has_point(w1: Cx, w2: Cx, index: u8) -> bool {
    let one = Cx::new(1.0, 0.0);
    let det = (one - w1 * w2).norm();
    let gb = (w1.norm() + 1.0) / det;
    let hb = (1.0 + w2.norm()) / det;
    let s = 1.0 - 1e-9;
    let hit = |g: Cx, h: Cx| {
        let x1 = g + h * w1;
        let x2 = g * w2 + h;
        (g.norm() > 0.0 || h.norm() > 0.0) && x1.norm() < s && x2.norm() < s
    };
    // Index two: coefficients in ℤ[i] ∪ (1+i)⁻¹(odd numerators).
    let (scale, bound_g, bound_h) = if index == 2 {
        (Cx::new(0.5, -0.5), gb * SQRT_2, hb * SQRT_2)
    } else {
        (one, gb, hb)
    };
    let ng = bound_g.ceil() as i64;
    let nh = bound_h.ceil() as i64;
    for gr in -ng..=ng {
        for gi in -ng..=ng {
            let gn = GaussInt::new(gr, gi);
            let g = gn.to_cx() * scale;
            if g.norm() > gb * (1.0 + 1e-12) {
                continue;
            }
            for hr in -nh..=nh {
                for hi in -nh..=nh {
                    let hn = GaussInt::new(hr, hi);
                    if index == 2 && (gn.in_ideal() != hn.in_ideal()) {
                        continue;
                    }
                    let h = hn.to_cx() * scale;
                    if h.norm() > hb * (1.0 + 1e-12) {
                        continue;
                    }
                    if hit(g, h) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
