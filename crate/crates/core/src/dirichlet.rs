//! Dirichlet constants: the per-θ products `|q_{n+1}|·|q_nθ − p_n|`, the extremal
//! lattice, and the suprema of `√k/|1 − w₁w₂|` over the transversal coordinates.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfrac::{best_approximations, CfracError};
use crate::gauss::{cis, Cx};
use crate::lattice::{enumerate_points, open_cylinder_is_empty, Basis2, Index, C2};
use crate::regions::{in_w1_sector, in_w2_sector, Arc, Boundary, BLUE2, RED2};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// `√2/(3 − √3) = 1/√(6 − 3√3) ≈ 1.1153550716`.
pub fn theoretical_constant() -> f64 {
    SQRT_2 / (3.0 - SQRT_3)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletReport {
    pub theta: Cx,
    /// Largest product over the computed window.
    pub c_theta: f64,
    /// Largest product over the last half of the window.
    pub c_prime_theta: f64,
    /// Position `n` of the largest product.
    pub attaining_index: usize,
    pub n_terms: usize,
    pub products: Vec<f64>,
    /// `θ ∈ ℚ(i)`: the sequence ended.
    pub truncated: bool,
}

/// Products `|q_{n+1}|·|q_nθ − p_n|` over consecutive best approximations with `|q| ≤ q_max`.
pub fn dirichlet_constant(theta: Cx, q_max: f64) -> Result<DirichletReport, CfracError> {
    if !(q_max >= 2.0) {
        return Err(CfracError::BadBound);
    }
    let seq = best_approximations(theta, q_max)?;
    let products: Vec<f64> = seq.terms.windows(2).map(|w| w[1].qmod * w[0].err).collect();
    let (mut c, mut at) = (0.0, 0);
    for (i, &p) in products.iter().enumerate() {
        if p > c {
            c = p;
            at = i;
        }
    }
    let tail = &products[products.len() / 2..];
    let c_prime = tail.iter().copied().fold(0.0, f64::max);
    Ok(DirichletReport {
        theta,
        c_theta: c,
        c_prime_theta: c_prime,
        attaining_index: at,
        n_terms: seq.terms.len(),
        products,
        truncated: seq.terminated,
    })
}

/// `n` points uniform in the unit square `[0, 1)²`, reproducible from `seed`.
pub fn random_thetas(seed: u64, n: usize) -> Vec<Cx> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Cx::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalLattice {
    pub basis: Basis2,
    pub w1: Cx,
    pub w2: Cx,
    pub r0: f64,
}

/// The lattice `ℤ[i]u + ℤ[i]v` with `u = r₀(1, e^{iα}w₂)`, `v = r₀(w₁, e^{iα})`,
/// `w₁ = 1 − √3/2 + i/2`, `w₂ = −iw₁`, `r₀ = |1 − w₁w₂|^{−1/2}`, `α = −arg(1 − w₁w₂)`.
/// Its open sup-norm ball of radius `r₀` holds no nonzero point.
pub fn extremal_lattice() -> ExtremalLattice {
    let w1 = Cx::new(1.0 - SQRT_3 / 2.0, 0.5);
    let w2 = Cx::new(0.0, -1.0) * w1;
    let m = Cx::new(1.0, 0.0) - w1 * w2;
    let r0 = 1.0 / m.norm().sqrt();
    let e = cis(-m.arg());
    let u = C2::new(Cx::new(r0, 0.0), r0 * e * w2);
    let v = C2::new(r0 * w1, r0 * e);
    let basis = Basis2::new(u, v, Index::One).expect("unimodular");
    ExtremalLattice { basis, w1, w2, r0 }
}

/// Exhaustive and box-enumeration checks that the open `r₀`-ball of the extremal lattice is empty.
pub fn extremal_ball_is_empty(lat: &ExtremalLattice, coeff_bound: u32) -> bool {
    let r = lat.r0 * (1.0 - 1e-9);
    open_cylinder_is_empty(&lat.basis, lat.r0, lat.r0)
        && !enumerate_points(&lat.basis, coeff_bound)
            .into_iter()
            .any(|x| !x.is_zero() && x.sup_norm() < r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Supremum {
    pub value: f64,
    pub w1: Cx,
    pub w2: Cx,
}

fn arc(center: Cx, radius: f64, start: f64, end: f64) -> Arc {
    Arc { center, radius, start, sweep: end - start }
}

/// Pairs of arcs `(w₁-arc, w₂-arc)` on which `|1 − w₁w₂|` attains its infimum,
/// for the index-1 constraint cases 1, 2, 4 and for index 2.
pub fn extremal_arcs(index: u8) -> Vec<(Arc, Arc)> {
    let i = Cx::new(0.0, 1.0);
    let half = Cx::new(0.5, -0.5);
    let r_half = 1.0 / SQRT_2;
    match index {
        1 => {
            let ca = arc(i, 1.0, -FRAC_PI_2, -FRAC_PI_3);
            let cb = arc(Cx::new(1.0, 1.0), 1.0, 4.0 * FRAC_PI_3, 3.0 * FRAC_PI_2);
            let cc = arc(Cx::new(1.0, 0.0), 1.0, PI, 7.0 * FRAC_PI_6);
            let cd = arc(Cx::new(1.0, -1.0), 1.0, 5.0 * FRAC_PI_6, PI);
            vec![
                (ca, cc),
                (ca, cd),
                (cb, cc),
                (cb, cd),
                (arc(i, 1.0, -FRAC_PI_2, -FRAC_PI_6), arc(half, r_half, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4)),
                (arc(half, r_half, FRAC_PI_4, 3.0 * FRAC_PI_4), arc(Cx::new(1.0, 0.0), 1.0, 2.0 * FRAC_PI_3, 5.0 * FRAC_PI_6)),
            ]
        }
        2 => vec![(
            arc(Cx::new(0.0, -1.0), SQRT_2, FRAC_PI_4, 5.0 * PI / 12.0),
            arc(Cx::new(1.0, 0.0), SQRT_2, 3.0 * FRAC_PI_4, 11.0 * PI / 12.0),
        )],
        _ => Vec::new(),
    }
}

/// `min_{w₂ ∈ arc} |1 − w₁w₂| = |w₁|·d(1/w₁, arc)`, with the minimizer.
fn inner_min(w1: Cx, a: &Arc) -> (f64, Cx) {
    if w1.norm() == 0.0 {
        return (1.0, a.point(0.0));
    }
    let target = Cx::new(1.0, 0.0) / w1;
    let w2 = a.nearest(target);
    ((Cx::new(1.0, 0.0) - w1 * w2).norm(), w2)
}

/// Supremum of `√k/|1 − w₁w₂|` over the closure of the index-`k` coordinate set,
/// searched over the extremal arcs: `grid_n` points along each `w₁`-arc (endpoints
/// included) and an exact minimization over the `w₂`-arc.
pub fn region_supremum(index: u8, grid_n: usize) -> Supremum {
    let k = index as f64;
    let n = grid_n.max(2);
    let mut best = Supremum { value: 0.0, w1: Cx::new(0.0, 0.0), w2: Cx::new(0.0, 0.0) };
    for (a1, a2) in extremal_arcs(index) {
        let local = (0..n)
            .into_par_iter()
            .map(|j| {
                let w1 = a1.point(j as f64 / (n - 1) as f64);
                let (m, w2) = inner_min(w1, &a2);
                Supremum { value: k.sqrt() / m, w1, w2 }
            })
            .reduce(|| Supremum { value: 0.0, w1: Cx::new(0.0, 0.0), w2: Cx::new(0.0, 0.0) }, |x, y| {
                if y.value > x.value {
                    y
                } else {
                    x
                }
            });
        if local.value > best.value {
            best = local;
        }
    }
    best
}

/// Grid maximum of `√k/|1 − w₁w₂|` over the closure of the coordinate set
/// (`w₁` polar grid on the sector, `w₂` square grid on the unit disk), optionally
/// restricted by `keep`.
pub fn region_grid_max(index: u8, n1: usize, n2: usize, keep: impl Fn(Cx, Cx) -> bool + Sync) -> Supremum {
    let k = index as f64;
    let w1s: Vec<Cx> = (0..n1)
        .flat_map(|i| {
            let r = (i as f64 + 0.5) / n1 as f64;
            (0..=n1).map(move |j| r * cis(FRAC_PI_4 * j as f64 / n1 as f64))
        })
        .collect();
    let w2s: Vec<Cx> = (0..n2)
        .flat_map(|i| (0..n2).map(move |j| Cx::new(-1.0 + (2 * i + 1) as f64 / n2 as f64, -1.0 + (2 * j + 1) as f64 / n2 as f64)))
        .filter(|z| z.norm() <= 1.0)
        .collect();
    let zero = Supremum { value: 0.0, w1: Cx::new(0.0, 0.0), w2: Cx::new(0.0, 0.0) };
    w1s.par_iter()
        .map(|&w1| {
            let mut best = zero;
            for &w2 in &w2s {
                let member = match index {
                    1 => in_w1_sector(w1, w2, Boundary::Closure),
                    _ => in_w2_sector(w1, w2, Boundary::Closure),
                };
                if member && keep(w1, w2) {
                    let v = k.sqrt() / (Cx::new(1.0, 0.0) - w1 * w2).norm();
                    if v > best.value {
                        best = Supremum { value: v, w1, w2 };
                    }
                }
            }
            best
        })
        .reduce(|| zero, |x, y| if y.value > x.value { y } else { x })
}

/// Restriction to the third constraint case: `w₂ ∉ Red₂ ∪ Blue₂`.
pub fn outside_red2_blue2(_w1: Cx, w2: Cx) -> bool {
    !RED2.contains_open(w2) && !BLUE2.contains_open(w2)
}
