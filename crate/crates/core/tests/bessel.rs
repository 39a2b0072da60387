mod common;

use std::f64::consts::PI;

use besselmap::bessel::*;
use besselmap::{ComplexValue, Error};
use common::{c, j_series_oracle, reference_table};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64, arg_max: f64) -> ComplexValue {
    let r = rng.gen_range(r_min..=r_max);
    let t = rng.gen_range(-arg_max..=arg_max);
    ComplexValue::from_polar(r, t)
}

fn scale_of(v: ComplexValue, z: ComplexValue) -> f64 {
    v.norm().max(envelope(z))
}

#[test]
fn spec_values_near_the_origin() {
    assert!((bessel_j(0, c(1.0, 0.0)).unwrap().value - c(0.765_197_686_557_966_6, 0.0)).norm() < 1e-14);
    assert!((bessel_j(1, c(1.0, 0.0)).unwrap().value - c(0.440_050_585_744_933_5, 0.0)).norm() < 1e-14);
    assert!((bessel_y(0, c(1.0, 0.0)).unwrap().value - c(0.088_256_964_215_676_96, 0.0)).norm() < 1e-14);
    assert!((bessel_j_prime(0, c(1.0, 0.0)).unwrap() - c(-0.440_050_585_744_933_5, 0.0)).norm() < 1e-14);
    assert!((bessel_j_prime(1, c(1.0, 0.0)).unwrap() - c(0.325_147_100_813_033, 0.0)).norm() < 1e-12);
    assert!((bessel_y_prime(0, c(1.0, 0.0)).unwrap() - c(0.781_212_821_300_288_7, 0.0)).norm() < 1e-12);
}

#[test]
fn domain_errors() {
    assert_eq!(bessel_j(51, c(1.0, 0.0)).unwrap_err(), Error::OrderTooLarge(51));
    assert!(matches!(bessel_j(0, c(2e4, 0.0)), Err(Error::MagnitudeTooLarge(_))));
    assert_eq!(bessel_j(0, c(f64::NAN, 0.0)).unwrap_err(), Error::NonFinite);
    assert_eq!(bessel_y(0, c(0.0, 0.0)).unwrap_err(), Error::OriginSingularity);
    assert!(matches!(bessel_y(0, c(-1.0, 0.0)), Err(Error::BranchCut(_))));
    assert_eq!(bessel_y_prime(0, c(0.0, 0.0)).unwrap_err(), Error::OriginSingularity);
    assert_eq!(wronskian_residual(0, c(0.0, 0.0)).unwrap_err(), Error::OriginSingularity);
    // Just below the cut is fine.
    assert!(bessel_y(2, c(-1.0, -1e-300)).is_ok());
}

#[test]
fn y_prime_matches_central_difference() {
    let h = 1e-5;
    let z = c(2.0, 0.0);
    let fd = (bessel_y(1, z + h).unwrap().value - bessel_y(1, z - h).unwrap().value) / (2.0 * h);
    assert!((bessel_y_prime(1, z).unwrap() - fd).norm() <= 1e-6);
}

#[test]
fn every_regime_matches_the_reference_table() {
    let reg = registry();
    for name in reg.names() {
        let regime = reg.get(name).unwrap();
        for r in reference_table().iter().filter(|r| regime.applicable(r.n, r.z)) {
            let Ok(j) = eval_with(regime, Kind::First, r.n, r.z) else { continue };
            let y = eval_with(regime, Kind::Second, r.n, r.z).unwrap();
            let ej = (j.value - r.j).norm() / scale_of(r.j, r.z);
            let ey = (y.value - r.y).norm() / scale_of(r.y, r.z);
            assert!(ej < 1e-11, "{name} J n={} z={} rel {ej:e}", r.n, r.z);
            assert!(ey < 1e-11, "{name} Y n={} z={} rel {ey:e}", r.n, r.z);
        }
    }
}

#[test]
fn error_estimates_bound_the_reference_error() {
    let reg = registry();
    let mut checked = 0;
    for r in reference_table() {
        let mut results = vec![(bessel_j(r.n, r.z), bessel_y(r.n, r.z))];
        for regime in reg.applicable(r.n, r.z) {
            results.push((eval_with(regime, Kind::First, r.n, r.z), eval_with(regime, Kind::Second, r.n, r.z)));
        }
        for (j, y) in results {
            // Genuine overflow far off the real axis is an error, not a value.
            let (Ok(j), Ok(y)) = (j, y) else { continue };
            assert!((j.value - r.j).norm() <= 10.0 * j.est_abs_error, "J n={} z={} {:?}", r.n, r.z, j);
            assert!((y.value - r.y).norm() <= 10.0 * y.est_abs_error, "Y n={} z={} {:?}", r.n, r.z, y);
            checked += 1;
        }
    }
    assert!(checked > 900);
}

#[test]
fn far_off_axis_overflows_cleanly() {
    assert_eq!(bessel_j(0, c(0.0, 900.0)).unwrap_err(), Error::Overflow);
    assert_eq!(bessel_y(20, c(1147.26, 966.33)).unwrap_err(), Error::Overflow);
}

#[test]
fn regimes_agree_in_the_overlap_annulus() {
    let reg = registry();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for _ in 0..1000 {
        let z = random_point(&mut rng, 8.0, 40.0, 3.0);
        let n = rng.gen_range(0..=10);
        for kind in [Kind::First, Kind::Second] {
            let vals: Vec<_> =
                reg.applicable(n, z).into_iter().map(|r| (r.name(), eval_with(r, kind, n, z).unwrap().value)).collect();
            for (i, (na, a)) in vals.iter().enumerate() {
                for (nb, b) in &vals[i + 1..] {
                    let rel = (a - b).norm() / scale_of(*a, z);
                    assert!(rel <= 1e-8, "{na} vs {nb} {kind:?} n={n} z={z} rel {rel:e}");
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn named_regimes_are_selectable() {
    let series = registry().get("series").unwrap();
    let v = eval_with(series, Kind::First, 0, c(1.0, 0.0)).unwrap();
    assert_eq!(v.method, Method::Series);
    let rec = registry().get("recurrence").unwrap();
    assert_eq!(eval_with(rec, Kind::First, 4, c(20.0, 1.0)).unwrap().method, Method::BackwardRecurrence);
    assert_eq!(eval_with(rec, Kind::Second, 4, c(20.0, 1.0)).unwrap().method, Method::ForwardRecurrence);
    let asym = registry().get("asymptotic").unwrap();
    assert_eq!(eval_with(asym, Kind::Second, 0, c(200.0, 0.0)).unwrap().method, Method::Asymptotic);
}

#[test]
fn auto_selection_by_radius() {
    assert_eq!(bessel_j(3, c(12.0, 0.0)).unwrap().method, Method::Series);
    assert_eq!(bessel_j(3, c(12.5, 0.0)).unwrap().method, Method::BackwardRecurrence);
    assert_eq!(bessel_j(3, c(30.0, 0.0)).unwrap().method, Method::Asymptotic);
    assert_eq!(bessel_j(10, c(40.0, 0.0)).unwrap().method, Method::BackwardRecurrence);
    assert_eq!(bessel_j(10, c(50.0, 0.0)).unwrap().method, Method::Asymptotic);
    // High order just past the series radius keeps Y on the series.
    assert_eq!(bessel_y(30, c(0.0, 14.0)).unwrap().method, Method::Series);
}

#[test]
fn wronskian_examples() {
    assert!(wronskian_residual(0, c(2.0, 0.0)).unwrap() <= 1e-12);
    assert!(wronskian_residual(3, c(1.0, 1.0)).unwrap() <= 1e-10);
}

fn jy(n: u32, z: ComplexValue) -> (ComplexValue, ComplexValue) {
    (bessel_j(n, z).unwrap().value, bessel_y(n, z).unwrap().value)
}

#[test]
fn identities_on_seeded_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let z = random_point(&mut rng, 0.1, 40.0, 3.0);
        let n = rng.gen_range(1..=10);
        let (jm, ym) = jy(n - 1, z);
        let (j0, y0) = jy(n, z);
        let (jp, yp) = jy(n + 1, z);

        let w = wronskian_residual(n, z).unwrap();
        let ident = 2.0 / (PI * z.norm());
        let w_scale = ident.max((jp * y0).norm() + (j0 * yp).norm());
        assert!(w <= 1e-9 * w_scale, "wronskian n={n} z={z}: {w:e} vs {w_scale:e}");

        let two_n_over_z = ComplexValue::new(2.0 * f64::from(n), 0.0) / z;
        let rj = (jm + jp - two_n_over_z * j0).norm();
        assert!(rj <= 1e-9 * jm.norm().max(j0.norm()).max(jp.norm()), "J recurrence n={n} z={z}");
        let ry = (ym + yp - two_n_over_z * y0).norm();
        assert!(ry <= 1e-9 * ym.norm().max(y0.norm()).max(yp.norm()), "Y recurrence n={n} z={z}");

        let (jc, yc) = jy(n, z.conj());
        assert!((jc - j0.conj()).norm() <= 1e-12 * scale_of(j0, z), "J conjugate n={n} z={z}");
        assert!((yc - y0.conj()).norm() <= 1e-12 * scale_of(y0, z), "Y conjugate n={n} z={z}");

        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let jneg = bessel_j(n, -z).unwrap().value;
        assert!((jneg - j0 * sign).norm() <= 1e-12 * scale_of(j0, z), "parity n={n} z={z}");
    }
}

#[test]
fn leading_asymptotic_at_fifty() {
    for n in 0..=2 {
        let z = c(50.0, 0.0);
        assert!((bessel_j(n, z).unwrap().value - asymptotic_j(n, z).unwrap()).norm() <= 5e-3);
        assert!((bessel_y(n, z).unwrap().value - asymptotic_y(n, z).unwrap()).norm() <= 5e-3);
    }
    let dev = |x: f64| (bessel_j(0, c(x, 0.0)).unwrap().value - asymptotic_j(0, c(x, 0.0)).unwrap()).norm();
    assert!(dev(100.0) < dev(30.0));
}

#[test]
fn ode_matches_j0_at_ten() {
    let sol = ode_oracle(0, c(10.0, 0.0), 1e-4).unwrap();
    let exact = bessel_j(0, c(10.0, 0.0)).unwrap().value;
    assert!((sol.last().w - exact).norm() <= 1e-8);
    assert_eq!(sol.order_n, 0);
    assert!(sol.step <= 1e-4);
    for pair in sol.samples.windows(2) {
        assert!(((pair[1].z - pair[0].z).norm() - sol.step).abs() < 1e-12);
    }
}

#[test]
fn ode_at_the_anchor_radius_is_the_series() {
    let end = ode_oracle(3, c(0.5, 0.0), 1e-4).unwrap().last();
    assert!((end.w - j_series_oracle(3, c(0.5, 0.0), 20)).norm() <= 1e-12);
}

#[test]
fn ode_rejects_large_steps_and_the_cut() {
    assert!(matches!(ode_oracle(1, c(10.0, 0.0), 2e-3), Err(Error::StepTooLarge { .. })));
    assert!(matches!(ode_oracle(0, c(-3.0, 0.0), 1e-4), Err(Error::BranchCut(_))));
}

#[test]
fn ode_oracle_on_a_sample_of_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..25 {
        let z = random_point(&mut rng, 0.1, 40.0, 3.0);
        let n = rng.gen_range(0..=10);
        let end = ode_endpoint(n, z, 2.5e-4, OdeAnchor::FirstKind).unwrap();
        let v = bessel_j(n, z).unwrap().value;
        assert!((v - end.w).norm() <= 1e-9 * (1.0 + end.w.norm()), "n={n} z={z}");
        let d = bessel_j_prime(n, z).unwrap();
        assert!((d - end.w_prime).norm() <= 1e-8 * (1.0 + end.w_prime.norm()), "derivative n={n} z={z}");
    }
}

#[test]
fn ode_second_kind_for_low_orders() {
    for (n, z) in [(0, c(1.0, 0.0)), (1, c(7.0, 2.0)), (2, c(-5.0, 3.0))] {
        let end = ode_endpoint(n, z, 1e-3, OdeAnchor::SecondKind).unwrap();
        let v = bessel_y(n, z).unwrap().value;
        assert!((v - end.w).norm() <= 1e-9 * (1.0 + end.w.norm()), "n={n} z={z}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn j_series_agreement_inside_twelve(n in 0u32..=20, r in 0.0f64..12.0, t in -3.1f64..3.1) {
        let z = ComplexValue::from_polar(r, t);
        let v = bessel_j(n, z).unwrap().value;
        let s = j_series_oracle(n, z, 120);
        prop_assert!((v - s).norm() <= 1e-11 * scale_of(s, z).max(1e-300) + 1e-300);
    }

    #[test]
    fn conjugate_symmetry(n in 0u32..=50, r in 0.1f64..200.0, t in -3.1f64..3.1) {
        let z = ComplexValue::from_polar(r, t);
        let a = bessel_y(n, z).unwrap().value;
        let b = bessel_y(n, z.conj()).unwrap().value;
        prop_assert!((a.conj() - b).norm() <= 1e-12 * scale_of(a, z));
    }
}
