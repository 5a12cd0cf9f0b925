//! Coarse binned comparison of long orbits with the density `32/|1 − w₁w₂|⁴`.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::gauss::{arg, Cx};
use crate::regions::{d8_normalize_pair, in_w1_sector, in_w2_sector, Boundary};
use crate::transversal::{density, orbit_sample, TransversalError};

/// Bins per axis: `arg w₁ ∈ [0, π/4]`, `|w₁|`, `|w₂|` after `D8` normalization.
pub const BINS: usize = 4;
pub const CELLS: usize = BINS * BINS * BINS;
const CHUNK: usize = 1 << 16;

pub fn bin_of(w1: Cx, w2: Cx) -> usize {
    let (_, a, b) = d8_normalize_pair(w1, w2);
    let idx = |x: f64| ((x * BINS as f64) as usize).min(BINS - 1);
    let t = idx(arg(a).min(FRAC_PI_4) / FRAC_PI_4);
    (t * BINS + idx(a.norm())) * BINS + idx(b.norm())
}

fn uniform_disk(rng: &mut impl Rng) -> Cx {
    loop {
        let z = Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm_sqr() < 1.0 {
            return z;
        }
    }
}

/// Cell probabilities under the density on `W₁ ∪ W₂`, by importance sampling with
/// `w₁` uniform on the sector and `w₂` uniform on the disk. Chunks are seeded from
/// `seed` and summed in order, so the result does not depend on thread scheduling.
pub fn expected_cells(samples: usize, seed: u64) -> Vec<f64> {
    let chunks: Vec<Vec<f64>> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut acc = vec![0.0; CELLS];
            let n = CHUNK.min(samples - c * CHUNK);
            let mut done = 0;
            while done < n {
                let w1 = uniform_disk(&mut rng);
                if w1.im < 0.0 || w1.im > w1.re {
                    continue;
                }
                done += 1;
                let w2 = uniform_disk(&mut rng);
                let m = usize::from(in_w1_sector(w1, w2, Boundary::Strict))
                    + usize::from(in_w2_sector(w1, w2, Boundary::Strict));
                if m > 0 {
                    acc[bin_of(w1, w2)] += m as f64 * density(w1, w2);
                }
            }
            acc
        })
        .collect();
    let mut sums = vec![0.0; CELLS];
    for acc in &chunks {
        for (s, a) in sums.iter_mut().zip(acc) {
            *s += a;
        }
    }
    let total: f64 = sums.iter().sum();
    sums.into_iter().map(|s| s / total).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityCheck {
    pub schema_version: u32,
    pub theta: [f64; 2],
    pub steps: usize,
    pub burn_in: usize,
    pub points: usize,
    pub truncated: bool,
    pub mc_samples: usize,
    pub chi2: f64,
    pub dof: usize,
    pub p_value: f64,
    pub counts: Vec<usize>,
    pub expected: Vec<f64>,
}

pub const DENSITY_SCHEMA_VERSION: u32 = 1;

/// Pearson χ² of the binned orbit of `seed_theta` against [`expected_cells`].
/// Empty cells are dropped from the statistic and the degrees of freedom.
pub fn density_check(
    seed_theta: Cx,
    steps: usize,
    burn_in: usize,
    mc_samples: usize,
    mc_seed: u64,
) -> Result<DensityCheck, TransversalError> {
    let sample = orbit_sample(seed_theta, steps, burn_in)?;
    let mut counts = vec![0usize; CELLS];
    for p in &sample.points {
        counts[bin_of(p.point.w1, p.point.w2)] += 1;
    }
    let probs = expected_cells(mc_samples, mc_seed);
    let n = sample.points.len() as f64;
    let (mut chi2, mut cells) = (0.0, 0usize);
    for (&o, &p) in counts.iter().zip(&probs) {
        if p > 0.0 {
            let e = p * n;
            chi2 += (o as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    let dof = cells.saturating_sub(1);
    let p_value = if dof == 0 || n == 0.0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).map(|d| d.sf(chi2)).unwrap_or(f64::NAN)
    };
    Ok(DensityCheck {
        schema_version: DENSITY_SCHEMA_VERSION,
        theta: [seed_theta.re, seed_theta.im],
        steps,
        burn_in,
        points: sample.points.len(),
        truncated: sample.truncated,
        mc_samples,
        chi2,
        dof,
        p_value,
        counts,
        expected: probs.iter().map(|p| p * n).collect(),
    })
}
