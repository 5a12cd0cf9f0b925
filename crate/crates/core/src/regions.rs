//! The planar regions `𝒞`, `𝒟`, `𝒯`, the six constraint disks, distances to the
//! regions, `D8` normalization of coordinate pairs, and the membership tests for
//! the coordinate sets `W₁`, `W₂` of the transversal.
//!
//! ```text
//! 𝒞 = {|z| < 1, arg z ∈ [0, π/4]}
//! 𝒟 = {|z| < 1, |z − 1| > 1, |z − 1 + i| > 1}
//! 𝒯 = {|z| < 1, |z − 1| > √2, |z + i| > √2}
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use crate::gauss::{angle_in, arg, cis, Cx, D8};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Corner of `∂𝒟` on the unit circle, `e^{iπ/3}`.
pub const D_CORNER_TOP: Cx = Cx::new(0.5, SQRT_3 / 2.0);
/// Corner of `∂𝒟` where the circles about `1` and `1 − i` meet, `1 − √3/2 − i/2`.
pub const D_CORNER_LOW: Cx = Cx::new(1.0 - SQRT_3 / 2.0, -0.5);
/// Corner of `∂𝒯` where the circles about `1` and `−i` meet, `(√3 − 1)(−1 + i)/2`.
pub const T_CORNER: Cx = Cx::new(-(SQRT_3 - 1.0) / 2.0, (SQRT_3 - 1.0) / 2.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Cx,
    pub radius: f64,
}

impl Disk {
    pub const fn new(center: Cx, radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn contains_open(&self, z: Cx) -> bool {
        (z - self.center).norm() < self.radius
    }

    pub fn contains_closed(&self, z: Cx) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

pub const RED1: Disk = Disk::new(Cx::new(0.0, 1.0), 1.0);
pub const RED2: Disk = Disk::new(Cx::new(0.0, -1.0), 1.0);
pub const BLUE1: Disk = Disk::new(Cx::new(0.5, -0.5), FRAC_1_SQRT_2);
pub const BLUE2: Disk = Disk::new(Cx::new(1.0, 1.0), 1.0);
pub const GREEN1: Disk = Disk::new(Cx::new(1.0, 1.0), 1.0);
pub const GREEN2: Disk = Disk::new(Cx::new(0.5, -0.5), FRAC_1_SQRT_2);

/// Counter-clockwise arc of the circle `C(center, radius)` over the angles `[start, start + sweep]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub center: Cx,
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

impl Arc {
    pub fn point(&self, s: f64) -> Cx {
        self.center + self.radius * cis(self.start + s * self.sweep)
    }

    pub fn endpoints(&self) -> (Cx, Cx) {
        (self.point(0.0), self.point(1.0))
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep
    }

    pub fn distance(&self, z: Cx) -> f64 {
        let d = z - self.center;
        if angle_in(arg(d), self.start, self.start + self.sweep, 0.0) {
            (d.norm() - self.radius).abs()
        } else {
            let (a, b) = self.endpoints();
            (z - a).norm().min((z - b).norm())
        }
    }

    /// The point of the arc nearest to `z`.
    pub fn nearest(&self, z: Cx) -> Cx {
        let d = z - self.center;
        if d.norm() > 0.0 && angle_in(arg(d), self.start, self.start + self.sweep, 0.0) {
            self.center + self.radius * d / d.norm()
        } else {
            let (a, b) = self.endpoints();
            if (z - a).norm() <= (z - b).norm() {
                a
            } else {
                b
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Cx,
    pub b: Cx,
}

impl Segment {
    pub fn distance(&self, z: Cx) -> f64 {
        let ab = self.b - self.a;
        let t = ((z - self.a) * ab.conj()).re / ab.norm_sqr();
        let t = t.clamp(0.0, 1.0);
        (z - (self.a + t * ab)).norm()
    }

    pub fn length(&self) -> f64 {
        (self.b - self.a).norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Arc(Arc),
    Segment(Segment),
}

impl Piece {
    pub fn distance(&self, z: Cx) -> f64 {
        match self {
            Piece::Arc(a) => a.distance(z),
            Piece::Segment(s) => s.distance(z),
        }
    }

    pub fn point(&self, s: f64) -> Cx {
        match self {
            Piece::Arc(a) => a.point(s),
            Piece::Segment(g) => g.a + s * (g.b - g.a),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.length(),
            Piece::Segment(s) => s.length(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionTag {
    C,
    D,
    T,
}

impl RegionTag {
    pub const ALL: [RegionTag; 3] = [RegionTag::C, RegionTag::D, RegionTag::T];

    /// Boundary of the region as a closed chain of arcs and segments.
    pub fn boundary(self) -> Vec<Piece> {
        match self {
            RegionTag::C => vec![
                Piece::Segment(Segment { a: Cx::new(0.0, 0.0), b: Cx::new(1.0, 0.0) }),
                Piece::Arc(Arc { center: Cx::new(0.0, 0.0), radius: 1.0, start: 0.0, sweep: FRAC_PI_4 }),
                Piece::Segment(Segment { a: cis(FRAC_PI_4), b: Cx::new(0.0, 0.0) }),
            ],
            RegionTag::D => vec![
                // unit circle from e^{iπ/3} to −i
                Piece::Arc(Arc { center: Cx::new(0.0, 0.0), radius: 1.0, start: FRAC_PI_3, sweep: 1.5 * PI - FRAC_PI_3 }),
                // C(1 − i, 1) from −i to the low corner
                Piece::Arc(Arc { center: Cx::new(1.0, -1.0), radius: 1.0, start: 5.0 * PI / 6.0, sweep: PI / 6.0 }),
                // C(1, 1) from the low corner to e^{iπ/3}
                Piece::Arc(Arc { center: Cx::new(1.0, 0.0), radius: 1.0, start: 2.0 * PI / 3.0, sweep: PI / 2.0 }),
            ],
            RegionTag::T => vec![
                // unit circle from i to −1
                Piece::Arc(Arc { center: Cx::new(0.0, 0.0), radius: 1.0, start: FRAC_PI_2, sweep: FRAC_PI_2 }),
                // C(−i, √2) from the corner to −1
                Piece::Arc(Arc { center: Cx::new(0.0, -1.0), radius: SQRT_2, start: 7.0 * PI / 12.0, sweep: PI / 6.0 }),
                // C(1, √2) from i to the corner
                Piece::Arc(Arc { center: Cx::new(1.0, 0.0), radius: SQRT_2, start: 3.0 * FRAC_PI_4, sweep: PI / 6.0 }),
            ],
        }
    }

    /// Membership in the closure, by the defining inequalities.
    pub fn contains_closure(self, z: Cx) -> bool {
        self.contains_with(z, 0.0, true)
    }

    /// Membership in the open region (for `𝒞`: open disk, closed angular range).
    pub fn contains_open(self, z: Cx) -> bool {
        self.contains_with(z, 0.0, false)
    }

    /// Membership with every inequality relaxed by `tol`.
    pub fn contains_with(self, z: Cx, tol: f64, closed: bool) -> bool {
        let within = |d: f64, r: f64| if closed { d <= r + tol } else { d < r + tol };
        let beyond = |d: f64, r: f64| if closed { d >= r - tol } else { d > r - tol };
        match self {
            RegionTag::C => within(z.norm(), 1.0) && in_sector(z, tol),
            RegionTag::D => {
                within(z.norm(), 1.0) && beyond((z - 1.0).norm(), 1.0) && beyond((z - Cx::new(1.0, -1.0)).norm(), 1.0)
            }
            RegionTag::T => {
                within(z.norm(), 1.0) && beyond((z - 1.0).norm(), SQRT_2) && beyond((z + Cx::new(0.0, 1.0)).norm(), SQRT_2)
            }
        }
    }

    /// Distance to the region computed from its boundary pieces.
    pub fn distance_by_boundary(self, z: Cx) -> f64 {
        if self.contains_closure(z) {
            return 0.0;
        }
        self.boundary().iter().map(|p| p.distance(z)).fold(f64::INFINITY, f64::min)
    }
}

/// `arg z ∈ [0, π/4]` up to `tol` (distance from the bounding rays).
fn in_sector(z: Cx, tol: f64) -> bool {
    let rot = z * cis(-FRAC_PI_4);
    z.im >= -tol && rot.im <= tol && (z.re >= -tol)
}

/// Distance from `z` to `𝒞`.
pub fn dist_c(z: Cx) -> f64 {
    RegionTag::C.distance_by_boundary(z)
}

/// Distance from `z` to `𝒯`.
pub fn dist_t(z: Cx) -> f64 {
    RegionTag::T.distance_by_boundary(z)
}

/// Which of the seven pieces of the plane around `𝒟` contains `z`, first match wins.
pub fn d_case(z: Cx) -> Option<u8> {
    let a0 = arg(z);
    let a1 = arg(z - 1.0);
    let a5 = arg(z - Cx::new(1.0, -1.0));
    let n1 = (z - 1.0).norm();
    let n5 = (z - Cx::new(1.0, -1.0)).norm();
    let eps = 1e-12;
    if RegionTag::D.contains_closure(z) {
        Some(0)
    } else if n1 <= 1.0 && angle_in(a1, 2.0 * FRAC_PI_3, 7.0 * PI / 6.0, eps) {
        Some(1)
    } else if angle_in(a0, -PI, FRAC_PI_3, eps) && angle_in(a1, -PI / 12.0, 2.0 * FRAC_PI_3, eps) {
        Some(2)
    } else if z.norm() >= 1.0 && angle_in(a0, FRAC_PI_3, 1.5 * PI, eps) {
        Some(3)
    } else if z.re >= 0.0 && angle_in(a5, PI, 23.0 * PI / 12.0, eps) {
        Some(4)
    } else if n5 <= 1.0 && angle_in(a5, 5.0 * PI / 6.0, PI, eps) {
        Some(5)
    } else if angle_in(a1, 7.0 * PI / 6.0, TAU, eps) && angle_in(a5, -PI / 12.0, 5.0 * PI / 6.0, eps) {
        Some(6)
    } else {
        None
    }
}

/// The distance formula attached to each of the seven pieces.
pub fn d_case_value(case: u8, z: Cx) -> f64 {
    match case {
        0 => 0.0,
        1 => 1.0 - (z - 1.0).norm(),
        2 => (z - D_CORNER_TOP).norm(),
        3 => z.norm() - 1.0,
        4 => (z + Cx::new(0.0, 1.0)).norm(),
        5 => 1.0 - (z - Cx::new(1.0, -1.0)).norm(),
        6 => (z - D_CORNER_LOW).norm(),
        _ => f64::NAN,
    }
}

/// Distance from `z` to `𝒟` by the seven-case dispatch.
pub fn dist_d(z: Cx) -> f64 {
    match d_case(z) {
        Some(c) => d_case_value(c, z),
        None => RegionTag::D.distance_by_boundary(z),
    }
}

/// Strict conditions describe the open transversal; closure conditions describe
/// the pairs whose open cylinder holds no nonzero lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Strict,
    Closure,
}

/// A `D8` element `φ` with `φ(w1) ∈ 𝒞̄` and the pair `(φ(w1), φ(w2)/φ(1)²)`.
/// On sector boundaries the first element of `D8::ALL` is taken.
pub fn d8_normalize_pair(w1: Cx, w2: Cx) -> (D8, Cx, Cx) {
    for tol in [0.0, 1e-14] {
        for phi in D8::ALL {
            if in_sector(phi.apply(w1), tol) {
                let (a, b) = phi.act_pair(w1, w2);
                return (phi, a, b);
            }
        }
    }
    unreachable!("the eight images of a point cover the sector")
}

fn outside(z: Cx, d: &Disk, b: Boundary, tol: f64) -> bool {
    let r = (z - d.center).norm();
    match b {
        Boundary::Strict => r > d.radius - tol,
        Boundary::Closure => r >= d.radius - tol,
    }
}

fn inside(z: Cx, d: &Disk, b: Boundary) -> bool {
    match b {
        Boundary::Strict => d.contains_closed(z),
        Boundary::Closure => d.contains_open(z),
    }
}

fn w1_cases(w1: Cx, w2: Cx, b: Boundary, tol: f64) -> Option<u8> {
    let c1 = inside(w2, &GREEN2, b) && outside(w1, &RED1, b, tol) && outside(w1, &GREEN1, b, tol);
    let c2 = inside(w2, &RED2, b) && !inside(w2, &GREEN2, b) && outside(w1, &RED1, b, tol);
    let c3 = outside(w2, &RED2, b, tol) && outside(w2, &BLUE2, b, tol);
    let c4 = inside(w2, &BLUE2, b) && outside(w1, &BLUE1, b, tol);
    [c1, c2, c3, c4].iter().position(|&c| c).map(|i| i as u8 + 1)
}

/// Which of the four disk conditions holds for a normalized pair. Disks are open,
/// so `w2 = 0`, on the circles of Red₂ and Green₂, falls in the third case.
pub fn constraint_case(w1: Cx, w2: Cx) -> Option<u8> {
    w1_cases(w1, w2, Boundary::Closure, 0.0)
}

fn w1_normalized(w1: Cx, w2: Cx, b: Boundary, tol: f64) -> bool {
    let closed = b == Boundary::Closure;
    if !(w1.norm() < 1.0 + tol && w2.norm() < 1.0 + tol) {
        return false;
    }
    if w1 == Cx::new(0.0, 0.0) {
        return true;
    }
    RegionTag::D.contains_with(w2, tol, closed) && w1_cases(w1, w2, b, tol).is_some()
}

fn w2_normalized(w1: Cx, w2: Cx, b: Boundary, tol: f64) -> bool {
    let closed = b == Boundary::Closure;
    let c = Disk::new(Cx::new(0.0, -1.0), SQRT_2);
    w1.norm() < 1.0 + tol && outside(w1, &c, b, tol) && RegionTag::T.contains_with(w2, tol, closed)
}

fn member(w1: Cx, w2: Cx, tol: f64, f: impl Fn(Cx, Cx) -> bool) -> bool {
    let stol = tol.max(1e-14);
    D8::ALL.iter().any(|phi| {
        let (a, b) = phi.act_pair(w1, w2);
        in_sector(a, stol) && f(a, b)
    })
}

/// Membership in `W₁` (open transversal). Pairs with `w1 = 0` are admitted for every `|w2| < 1`.
pub fn in_w1(w1: Cx, w2: Cx) -> bool {
    in_w1_with(w1, w2, Boundary::Strict, 0.0)
}

/// Membership in `W₂` (open transversal).
pub fn in_w2(w1: Cx, w2: Cx) -> bool {
    in_w2_with(w1, w2, Boundary::Strict, 0.0)
}

/// Membership in `W₁` for the chosen boundary convention, inequalities relaxed by `tol`.
pub fn in_w1_with(w1: Cx, w2: Cx, b: Boundary, tol: f64) -> bool {
    member(w1, w2, tol, |a, c| w1_normalized(a, c, b, tol))
}

/// Membership in `W₂` for the chosen boundary convention, inequalities relaxed by `tol`.
pub fn in_w2_with(w1: Cx, w2: Cx, b: Boundary, tol: f64) -> bool {
    member(w1, w2, tol, |a, c| w2_normalized(a, c, b, tol))
}

/// Membership in `W_k`.
pub fn in_w(k: u8, w1: Cx, w2: Cx, b: Boundary, tol: f64) -> bool {
    match k {
        1 => in_w1_with(w1, w2, b, tol),
        2 => in_w2_with(w1, w2, b, tol),
        _ => false,
    }
}

/// Membership in `W₁⁰` for `w1` already in the sector (no normalization).
pub fn in_w1_sector(w1: Cx, w2: Cx, b: Boundary) -> bool {
    in_sector(w1, 0.0) && w1_normalized(w1, w2, b, 0.0)
}

/// Membership in `W₂⁰` for `w1` already in the sector (no normalization).
pub fn in_w2_sector(w1: Cx, w2: Cx, b: Boundary) -> bool {
    in_sector(w1, 0.0) && w2_normalized(w1, w2, b, 0.0)
}

/// Geometry handed to plotting tools.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionsExport {
    pub schema_version: u32,
    pub regions: Vec<RegionRecord>,
    pub disks: Vec<DiskRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub name: String,
    pub boundary: Vec<PieceRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub kind: String,
    pub center: Option<[f64; 2]>,
    pub radius: Option<f64>,
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub start_angle: Option<f64>,
    pub sweep: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskRecord {
    pub name: String,
    pub center: [f64; 2],
    pub radius: f64,
}

pub const REGIONS_SCHEMA_VERSION: u32 = 1;

fn pair(z: Cx) -> [f64; 2] {
    [z.re, z.im]
}

pub fn regions_export() -> RegionsExport {
    let regions = RegionTag::ALL
        .iter()
        .map(|tag| RegionRecord {
            name: format!("{tag:?}"),
            boundary: tag
                .boundary()
                .iter()
                .map(|p| match p {
                    Piece::Arc(a) => PieceRecord {
                        kind: "arc".into(),
                        center: Some(pair(a.center)),
                        radius: Some(a.radius),
                        start: pair(a.point(0.0)),
                        end: pair(a.point(1.0)),
                        start_angle: Some(a.start),
                        sweep: Some(a.sweep),
                    },
                    Piece::Segment(s) => PieceRecord {
                        kind: "segment".into(),
                        center: None,
                        radius: None,
                        start: pair(s.a),
                        end: pair(s.b),
                        start_angle: None,
                        sweep: None,
                    },
                })
                .collect(),
        })
        .collect();
    let disks = [
        ("Red1", RED1),
        ("Red2", RED2),
        ("Blue1", BLUE1),
        ("Blue2", BLUE2),
        ("Green1", GREEN1),
        ("Green2", GREEN2),
    ]
    .iter()
    .map(|(n, d)| DiskRecord { name: n.to_string(), center: pair(d.center), radius: d.radius })
    .collect();
    RegionsExport { schema_version: REGIONS_SCHEMA_VERSION, regions, disks }
}
