mod common;

use besselmap::mapping::*;
use besselmap::{ComplexValue, Error};
use common::c;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const J1_ZERO: f64 = 3.831_705_970_207_512;

fn spec(a: ComplexValue, b: ComplexValue, n: u32, eps: f64) -> MappingSpec {
    MappingSpec::new(a, b, n, eps).unwrap()
}

fn j0_only() -> MappingSpec {
    spec(c(1.0, 0.0), c(0.0, 0.0), 0, 0.0)
}

fn mixed() -> MappingSpec {
    spec(c(1.0, 0.0), c(1.0, 0.0), 0, 0.1)
}

#[test]
fn derivative_example_against_finite_difference() {
    let h = 1e-5;
    let z = c(2.0, 1.0);
    let s = mixed();
    let fd = (map_point(&s, z + h).unwrap() - map_point(&s, z - h).unwrap()) / (2.0 * h);
    assert!((map_derivative(&s, z).unwrap() - fd).norm() <= 1e-6);
}

#[test]
fn derivative_consistency_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let h = 1e-5;
    for _ in 0..200 {
        let z = ComplexValue::from_polar(rng.gen_range(0.5..20.0), rng.gen_range(-3.0..3.0));
        let s = spec(
            c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            rng.gen_range(0..=6),
            rng.gen_range(0.0..0.5),
        );
        let fd = (map_point(&s, z + h).unwrap() - map_point(&s, z - h).unwrap()) / (2.0 * h);
        let d = map_derivative(&s, z).unwrap();
        assert!((d - fd).norm() <= 1e-5 * d.norm().max(1.0), "z={z} {s:?}");
    }
}

#[test]
fn cr_residual_examples() {
    let z = c(1.0, 1.0);
    let r1 = cauchy_riemann_residual(&j0_only(), z, 1e-4).unwrap();
    let r2 = cauchy_riemann_residual(&j0_only(), z, 5e-5).unwrap();
    assert!(r1 <= 1e-7);
    let ratio = r1 / r2;
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn cr_stencil_errors() {
    assert_eq!(cauchy_riemann_residual(&mixed(), c(1e-4, 0.0), 1e-4).unwrap_err(), Error::OriginSingularity);
    assert!(matches!(cauchy_riemann_residual(&mixed(), c(5e-5, 0.0), 1e-4), Err(Error::BranchCut(_))));
    assert!(matches!(cauchy_riemann_residual(&mixed(), c(1.0, 0.0), 0.0), Err(Error::InvalidArgument(_))));
    assert!(matches!(cauchy_riemann_residual(&mixed(), c(1.0, 0.0), 0.2), Err(Error::InvalidArgument(_))));
}

/// Values of `w` carry rounding of order `eps·|w|`, which the difference
/// quotient divides by `h`; below a few hundred times that the ratio is noise.
fn cr_noise_floor(s: &MappingSpec, z: ComplexValue, h: f64) -> f64 {
    let w = map_point(s, z).unwrap().norm().max(1.0);
    (1e3 * f64::EPSILON * w / h).max(1e-12)
}

#[test]
fn cr_residual_is_second_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut measured = 0;
    for _ in 0..300 {
        let z = ComplexValue::from_polar(rng.gen_range(0.5..15.0), rng.gen_range(-2.9..2.9));
        let s = spec(c(1.0, 0.0), c(rng.gen_range(-1.0..1.0), 0.3), rng.gen_range(0..=4), 0.1);
        let h = 2e-2;
        let r1 = cauchy_riemann_residual(&s, z, h).unwrap();
        let r2 = cauchy_riemann_residual(&s, z, h / 2.0).unwrap();
        if r2 <= cr_noise_floor(&s, z, h / 2.0) {
            continue;
        }
        let ratio = r1 / r2;
        assert!((3.5..=4.5).contains(&ratio), "z={z} ratio {ratio} r1={r1:e} r2={r2:e}");
        measured += 1;
    }
    assert!(measured > 100, "only {measured} points above the noise floor");
}

#[test]
fn clean_annulus_has_no_violations() {
    let report = conformality_scan(&j0_only(), &Annulus::new(0.5, 3.0), PolarGrid::new(16, 64), 1e-6, 1e-6).unwrap();
    assert_eq!(report.grid_points_checked, 16 * 64);
    assert!(report.cr_max_residual <= 1e-6);
    assert!(report.violation_points.iter().all(|v| v.kind != ViolationKind::CrViolation));
}

#[test]
fn scan_flags_the_first_j1_zero() {
    let report = conformality_scan(&j0_only(), &Annulus::new(3.5, 4.2), PolarGrid::new(57, 65), 1e-6, 1e-2).unwrap();
    let near: Vec<_> = report.violation_points.iter().filter(|v| v.kind == ViolationKind::DerivativeNearZero).collect();
    assert!(!near.is_empty());
    assert!(near.iter().all(|v| (v.z - c(J1_ZERO, 0.0)).norm() < 0.05));
}

#[test]
fn zero_mapping_flags_everything() {
    let zero = spec(c(0.0, 0.0), c(0.0, 0.0), 2, 0.3);
    let report = conformality_scan(&zero, &Annulus::new(1.0, 2.0), PolarGrid::new(4, 8), 1e-6, 1e-8).unwrap();
    let flagged = report.violation_points.iter().filter(|v| v.kind == ViolationKind::DerivativeNearZero).count();
    assert_eq!(flagged, 32);
    assert_eq!(report.derivative_min_modulus, 0.0);
}

#[test]
fn violations_match_thresholds_exactly() {
    let s = mixed();
    let region = Annulus::new(0.5, 7.0);
    let grid = PolarGrid::new(12, 40);
    let cr_tol = 1e-9;
    let deriv_tol = 0.2;
    let report = conformality_scan(&s, &region, grid, cr_tol, deriv_tol).unwrap();
    let mut expected = Vec::new();
    for z in region.grid_points(grid) {
        let cr = cauchy_riemann_residual(&s, z, 1e-4).unwrap();
        let d = map_derivative(&s, z).unwrap().norm();
        if cr > cr_tol {
            expected.push((z, ViolationKind::CrViolation));
        }
        if d < deriv_tol {
            expected.push((z, ViolationKind::DerivativeNearZero));
        }
    }
    let got: Vec<_> = report.violation_points.iter().map(|v| (v.z, v.kind)).collect();
    assert_eq!(got, expected);
}

#[test]
fn scan_is_deterministic() {
    let region = Annulus::new(0.5, 7.0);
    let grid = PolarGrid::new(10, 31);
    let a = conformality_scan(&mixed(), &region, grid, 1e-12, 0.3).unwrap();
    let b = conformality_scan(&mixed(), &region, grid, 1e-12, 0.3).unwrap();
    assert_eq!(a, b);
    assert!(!a.violation_points.is_empty());
}

#[test]
fn zeros_in_three_to_five() {
    let found = find_derivative_zeros(&j0_only(), &Annulus::new(3.0, 5.0), PolarGrid::new(6, 24)).unwrap();
    assert_eq!(found.roots.len(), 1, "{:?}", found.roots);
    assert!((found.roots[0] - c(J1_ZERO, 0.0)).norm() < 1e-9);
}

#[test]
fn no_zeros_below_three() {
    let found = find_derivative_zeros(&j0_only(), &Annulus::new(0.5, 3.0), PolarGrid::new(6, 24)).unwrap();
    assert!(found.roots.is_empty(), "{:?}", found.roots);
}

#[test]
fn clustered_seeds_give_one_root() {
    // Several seeds around the positive real axis all converge to the root.
    let region = Annulus::new(3.8, 3.86);
    let found = find_derivative_zeros(&j0_only(), &region, PolarGrid::new(5, 201)).unwrap();
    assert_eq!(found.roots.len(), 1);
}

#[test]
fn returned_roots_are_genuine() {
    let s = mixed();
    let found = find_derivative_zeros(&s, &Annulus::new(0.5, 7.0), PolarGrid::new(8, 32)).unwrap();
    assert!(!found.roots.is_empty());
    for r in &found.roots {
        assert!(map_derivative(&s, *r).unwrap().norm() <= 1e-9, "root {r}");
    }
    for pair in found.roots.windows(2) {
        assert!(pair[0].norm() <= pair[1].norm());
        assert!((pair[0] - pair[1]).norm() > 1e-6);
    }
}

#[test]
fn invalid_region_is_rejected() {
    assert!(matches!(
        find_derivative_zeros(&j0_only(), &Annulus::new(5.0, 3.0), PolarGrid::new(4, 4)),
        Err(Error::InvalidRegion(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn mapping_is_linear_in_coefficients(
        ar in -3.0f64..3.0, ai in -3.0f64..3.0, br in -3.0f64..3.0, bi in -3.0f64..3.0,
        cr in -3.0f64..3.0, ci in -3.0f64..3.0,
        n in 0u32..=8, eps in 0.0f64..1.0,
        r in 0.2f64..30.0, t in -3.0f64..3.0,
    ) {
        let s = spec(c(ar, ai), c(br, bi), n, eps);
        let k = c(cr, ci);
        let z = ComplexValue::from_polar(r, t);
        let lhs = map_point(&s.scaled(k), z).unwrap();
        let rhs = map_point(&s, z).unwrap() * k;
        let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
        // Parts of w can cancel, so compare against the size of the
        // individual terms.
        let terms = (k * s.a).norm() * besselmap::bessel::bessel_j(n, z).unwrap().value.norm()
            + (k * s.b).norm() * eps * besselmap::bessel::bessel_y(n, z).unwrap().value.norm();
        prop_assert!((lhs - rhs).norm() <= 1e-14 * scale.max(terms));
    }
}
