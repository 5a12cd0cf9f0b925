mod common;

use common::*;
use gausscf::cfrac::best_approximations;
use gausscf::critical::finite_test_passes;
use gausscf::gauss::{Cx, GaussInt};
use gausscf::regions::{in_w1_sector, in_w2_sector, Boundary};

/// For w₁ in the sector, membership in the open transversal is the same as an empty
/// open cylinder around u = (1, w₂), v = (w₁, 1).
#[test]
fn membership_matches_cylinder_oracle() {
    let mut r = rng(406);
    for k in [1u8, 2] {
        let mut members = 0;
        for _ in 0..1000 {
            let (w1, w2) = (uniform_sector(&mut r), uniform_disk(&mut r));
            let oracle = !cylinder_has_point(w1, w2, k);
            let member = match k {
                1 => in_w1_sector(w1, w2, Boundary::Strict),
                _ => in_w2_sector(w1, w2, Boundary::Strict),
            };
            assert_eq!(member, oracle, "k={k} w1={w1} w2={w2}");
            assert_eq!(finite_test_passes(w1, w2, k, 1e-9), oracle, "k={k} w1={w1} w2={w2}");
            members += usize::from(member);
        }
        assert!(members > 10, "k={k}: {members}");
    }
}

#[test]
fn golden_ratio_contains_real_convergents() {
    let theta = Cx::new((1.0 + 5f64.sqrt()) / 2.0, 0.0);
    let s = best_approximations(theta, 40.0).unwrap();
    let ours: Vec<_> = s.terms.iter().map(|t| (t.p, t.q)).collect();
    let oracle: Vec<_> = best_approx_brute_force(theta, 40).into_iter().map(|(p, q, _)| (p, q)).collect();
    assert_eq!(ours, oracle);
    for (p, q) in [(2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13), (34, 21)] {
        assert!(ours.contains(&(GaussInt::new(p, 0), GaussInt::new(q, 0))), "{p}/{q}");
    }
}

#[test]
fn half_terminates() {
    let s = best_approximations(Cx::new(0.5, 0.0), 10.0).unwrap();
    assert!(s.terminated);
    assert_eq!(s.terms.last().unwrap().err, 0.0);
}

#[test]
fn polyline_oracle_resolution() {
    for region in [Region::C, Region::D, Region::T] {
        let o = PolylineOracle::new(region, 10_000);
        assert!(o.vertex_count() >= 1000, "{region:?}");
        // the origin lies in the closures of 𝒞 and 𝒟 but not of 𝒯
        let d0 = o.distance(Cx::new(0.0, 0.0));
        assert_eq!(d0 == 0.0, region != Region::T, "{region:?}: {d0}");
        // a far point sees the unit circle
        assert!((o.distance(Cx::new(-3.0, 0.0)) - 2.0).abs() < 1e-9 || region == Region::C);
    }
}
