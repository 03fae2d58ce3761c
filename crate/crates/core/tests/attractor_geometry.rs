use std::f64::consts::PI;

use num_complex::Complex64;
use pascal_rays::attractor::*;
use pascal_rays::cubic::{asym_factor, family_cubic, solve_chain, tau_explicit};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

const CONJ: LambdaBranch = LambdaBranch::Conjugate;

fn one() -> C {
    C::new(1.0, 0.0)
}

fn locus_samples(total: usize) -> Vec<PPlanePoint> {
    let loci = pplane_locus(CONJ);
    let per = total / loci.len() + 1;
    loci.iter().flat_map(|l| l.sample(per, 5.0)).take(total).collect()
}

#[test]
fn locus_points_tie() {
    let pts = locus_samples(200);
    assert_eq!(pts.len(), 200);
    for pt in pts {
        assert!(pt.r >= 1.0 - 1e-12);
        let t = branch_images(pt, CONJ);
        let gap = (t[0].norm() - t[1].norm()).abs();
        assert!(gap <= 1e-9 * (1.0 + t[0].norm()), "{pt:?}: {gap:e}");
    }
}

#[test]
fn off_locus_points_do_not_tie() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 200 {
        let pt = PPlanePoint::new(rng.gen_range(1.0..5.0), rng.gen_range(-PI..PI));
        if distance_to_locus(pt.to_complex(), CONJ) < 0.05 {
            continue;
        }
        let t = branch_images(pt, CONJ);
        assert!((t[0].norm() - t[1].norm()).abs() > 1e-4, "{pt:?}");
        done += 1;
    }
}

#[test]
fn circle_is_the_printed_one() {
    let arc = pplane_locus(CONJ)
        .into_iter()
        .find(|l| matches!(l, LocusSpec::Arc { .. }))
        .unwrap();
    let LocusSpec::Arc { center, radius, .. } = arc else { unreachable!() };
    assert_eq!(center, (-(15f64.sqrt()) / 2.0, 5f64.sqrt() / 2.0));
    assert_eq!(radius, 6f64.sqrt());
}

#[test]
fn principal_lambda_reflects_the_circle() {
    let arc = pplane_locus(LambdaBranch::Principal)[2];
    let LocusSpec::Arc { center, .. } = arc else { unreachable!() };
    assert_eq!(center, (15f64.sqrt() / 2.0, -(5f64.sqrt()) / 2.0));
    for pt in arc.sample(50, 0.0) {
        let t = branch_images(pt, LambdaBranch::Principal);
        assert!((t[0].norm() - t[1].norm()).abs() < 1e-9 * (1.0 + t[0].norm()));
    }
}

#[test]
fn rotated_l_sets_order_the_images() {
    let sets: Vec<Vec<LocusSpec>> = (1..=3).map(|i| l_set(i, CONJ).unwrap()).collect();
    let mut checked = 0;
    for piece in &sets[0] {
        for p1 in piece.sample(40, 5.0) {
            let p2 = p1.rotate(4.0 * PI / 3.0);
            let p3 = p1.rotate(2.0 * PI / 3.0);
            assert!(sets[1].iter().any(|l| l.distance(p2.to_complex()) < 1e-9));
            assert!(sets[2].iter().any(|l| l.distance(p3.to_complex()) < 1e-9));
            let [t1, t2, t3] = [p1, p2, p3].map(|p| pplane_image(p.to_complex(), CONJ).norm());
            assert!((t1 - t2).abs() <= 1e-9 * (1.0 + t1), "{p1:?}");
            if gamma_region(p1, CONJ).unwrap() != GammaRegion::Neither {
                assert!(t3 - t1 > 1e-6, "{p1:?}: {t1} {t3}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 40);
}

#[test]
fn printed_regions_fail_the_ordering_somewhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = 0;
    for _ in 0..2000 {
        let pt = PPlanePoint::new(rng.gen_range(1.0..5.0), rng.gen_range(-PI..PI));
        if gamma_region_as_printed(pt).unwrap() != GammaRegion::Neither {
            let t = branch_images(pt, CONJ);
            if t[0].norm() >= t[2].norm() {
                violations += 1;
            }
        }
    }
    assert!(violations > 0);
}

proptest! {
    #[test]
    fn closed_form_modulus_matches_mapping(r in 0.05f64..20.0, th in -PI..PI, principal in any::<bool>()) {
        let b = if principal { LambdaBranch::Principal } else { CONJ };
        let m = pplane_modulus_sq(PPlanePoint::new(r, th), b);
        prop_assert!((m.closed_form - m.direct).abs() <= 1e-12 * m.direct.max(1.0));
    }

    #[test]
    fn corrected_regions_order_the_images(r in 1.0f64..10.0, th in -PI..PI) {
        let pt = PPlanePoint::new(r, th);
        if gamma_region(pt, CONJ).unwrap() != GammaRegion::Neither {
            let t = branch_images(pt, CONJ);
            prop_assert!(t[0].norm() < t[2].norm());
        }
    }
}

#[test]
fn beta_conjugation_diagnostic() {
    // beta(conj x) = conj(beta(x)) away from the cut of the principal root;
    // the sign-flipped relation holds only where beta is imaginary.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut flipped = 0;
    for _ in 0..200 {
        let x = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = beta_of_x(x, one()).unwrap();
        let bc = beta_of_x(x.conj(), one()).unwrap();
        assert!((bc - b.conj()).norm() <= 1e-10 * b.norm().max(1.0), "{x}");
        if (bc + b.conj()).norm() <= 1e-10 * b.norm().max(1.0) {
            flipped += 1;
        }
    }
    assert!(flipped < 200);
}

#[test]
fn traced_curve_properties() {
    let tol = 1e-9;
    let curve = trace_attractor(&Window::square(2.0), (256, 256), tol, one()).unwrap();
    assert!(curve.samples.len() > 300);
    assert_eq!(curve.branch_count(), 3);
    for s in &curve.samples {
        assert!(s.residual <= tol);
        let (gap, _) = tie_residual(s.x.conj(), one()).unwrap();
        assert!(gap <= tol);
        assert!(!region_b(s.x, one(), 2.0 * tol).unwrap());
    }
    assert!(curve.distance_to(C::new(0.0, 0.0)) <= tol);
    assert!(curve.distance_to(one()) > 0.5);
    // Consecutive samples along a branch are one grid cell apart at most.
    for b in curve.branches() {
        for w in b.windows(2) {
            assert!((w[0].x - w[1].x).norm() < 0.04);
        }
    }
}

#[test]
fn trace_is_deterministic() {
    let w = Window::new(-1.5, 1.0, -1.2, 1.3);
    let a = trace_attractor(&w, (64, 48), 1e-10, one()).unwrap();
    let b = trace_attractor(&w, (64, 48), 1e-10, one()).unwrap();
    assert_eq!(a, b);
    assert!(a.samples.iter().all(|s| s.residual <= 1e-10));
}

#[test]
fn zeros_sit_on_the_three_rays() {
    for n in [50, 100, 200] {
        let zs = family_zeros(n, one()).unwrap();
        for z in zs.roots {
            let cube = z * z * z;
            assert!(cube.im.abs() <= 1e-8 * cube.norm() && cube.re < 0.0, "n={n} {z}");
        }
    }
}

#[test]
fn zeros_inside_cauchy_disc() {
    for n in [3, 4, 5, 10, 30, 60, 120] {
        let d = disc_bound(n, one()).unwrap();
        assert!(d.max_zero_modulus <= d.rho_cauchy, "n={n}");
    }
}

#[test]
fn zero_modulus_grows_with_degree() {
    let m: Vec<f64> = [50, 100, 200].iter().map(|&n| disc_bound(n, one()).unwrap().max_zero_modulus).collect();
    assert!(m[0] < m[1] && m[1] < m[2]);
}

#[test]
fn dominant_residue_takes_over_in_region_b() {
    let pts = [C::new(1.0, 0.0), C::new(0.8, 0.0), C::new(1.2, 0.2), C::new(1.0, -0.3), C::new(0.6, 0.1)];
    for x in pts {
        assert!(region_b(x, one(), 0.2).unwrap());
        let c = family_cubic(x, one()).unwrap();
        let (roots, _) = solve_chain(&c);
        let err = |n: usize| {
            let tau = tau_explicit(n, &roots, &c).unwrap();
            (asym_factor(n, &roots, &c, tau).unwrap() - 1.0).norm()
        };
        assert!(err(60) <= 0.1 * err(20), "{x}: {} {}", err(60), err(20));
    }
}
