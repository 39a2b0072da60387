use std::f64::consts::PI;

use besselmap::boundary::boundary_point;
use besselmap::error_analysis::calibrate;
use besselmap::mapping::{map_point, MappingSpec};
use besselmap::ComplexValue;
use rayon::prelude::*;

use crate::config::Config;
use crate::params::{self, REGION_KEYS, SHAPE_KEYS, SPEC_KEYS};
use crate::svg::{self, Curve};

/// Samples per drawn curve.
pub const SAMPLES: usize = 256;

pub fn allowed_keys() -> Vec<&'static str> {
    params::keys(&[SPEC_KEYS, REGION_KEYS, SHAPE_KEYS, &["calibrate", "samples"]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridImage {
    pub spec: MappingSpec,
    /// Circle images, ray images, the target boundary, the image of `|z| = R`.
    pub curves: Vec<Curve>,
    pub dropped_segments: usize,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn full_turn() -> Vec<f64> {
    linspace(-PI, PI, SAMPLES)
}

/// Whether the straight segment `a → b` meets the negative real axis.
fn crosses_cut(a: ComplexValue, b: ComplexValue) -> bool {
    if (a.im >= 0.0) == (b.im >= 0.0) {
        return false;
    }
    let t = a.im / (a.im - b.im);
    a.re + t * (b.re - a.re) < 0.0
}

/// Splits a sampled curve into drawable runs. A segment is dropped when an
/// endpoint failed to evaluate or, with the `Yₙ` term active, when its
/// preimage crosses the branch cut.
fn runs(zs: &[ComplexValue], ws: &[Option<ComplexValue>], check_cut: bool) -> (Vec<Vec<ComplexValue>>, usize) {
    let mut out = Vec::new();
    let mut dropped = 0;
    let mut current: Vec<ComplexValue> = Vec::new();
    for i in 0..zs.len().saturating_sub(1) {
        let ok = matches!((ws[i], ws[i + 1]), (Some(_), Some(_))) && !(check_cut && crosses_cut(zs[i], zs[i + 1]));
        if ok {
            if current.is_empty() {
                current.push(ws[i].expect("checked above"));
            }
            current.push(ws[i + 1].expect("checked above"));
        } else {
            dropped += 1;
            if current.len() >= 2 {
                out.push(std::mem::take(&mut current));
            }
            current.clear();
        }
    }
    if current.len() >= 2 {
        out.push(current);
    }
    (out, dropped)
}

fn finite(w: ComplexValue) -> Option<ComplexValue> {
    (w.re.is_finite() && w.im.is_finite()).then_some(w)
}

fn image(spec: &MappingSpec, zs: &[ComplexValue]) -> (Vec<Vec<ComplexValue>>, usize) {
    let ws: Vec<Option<ComplexValue>> = zs.iter().map(|&z| map_point(spec, z).ok().and_then(finite)).collect();
    runs(zs, &ws, spec.y_active())
}

pub fn compute(cfg: &Config) -> anyhow::Result<GridImage> {
    let eps = params::epsilon(cfg)?;
    let boundary = params::positive_shape(cfg, eps, "epsilon")?;
    let (region, grid) = params::region(cfg, (8, 16))?;
    let spec = if params::flag(cfg, "calibrate", false)? {
        for key in ["a_re", "a_im", "b_re", "b_im"] {
            if cfg.contains(key) {
                return Err(cfg.invalid(key, "cannot be combined with `calibrate = true`").into());
            }
        }
        let samples = params::positive_count(cfg, "samples", 512, 2)?;
        calibrate(&boundary, params::order(cfg)?, samples)?
    } else {
        if cfg.contains("samples") {
            return Err(cfg.invalid("samples", "only used with `calibrate = true`").into());
        }
        params::spec(cfg)?
    };

    let radii = linspace(region.r_min, region.r_max, grid.n_radial);
    let angles = if region.cut_margin > 0.0 {
        linspace(-PI + region.cut_margin, PI - region.cut_margin, grid.n_angular)
    } else {
        (0..grid.n_angular).map(|j| -PI + 2.0 * PI * j as f64 / grid.n_angular as f64).collect()
    };
    let turn = full_turn();
    let mut preimages: Vec<(&'static str, &'static str, Vec<ComplexValue>)> = Vec::new();
    for &r in &radii {
        preimages.push(("grid-circle", "#1f77b4", turn.iter().map(|&t| ComplexValue::from_polar(r, t)).collect()));
    }
    for &t in &angles {
        let rs = linspace(region.r_min, region.r_max, SAMPLES);
        preimages.push(("grid-ray", "#ff7f0e", rs.iter().map(|&r| ComplexValue::from_polar(r, t)).collect()));
    }
    let mut images: Vec<(Curve, usize)> = preimages
        .par_iter()
        .map(|(class, stroke, zs)| {
            let (runs, dropped) = image(&spec, zs);
            (Curve { class, stroke, runs }, dropped)
        })
        .collect();

    let target: Vec<ComplexValue> =
        turn.iter().map(|&t| boundary_point(&boundary, t)).collect::<besselmap::Result<_>>()?;
    images.push((Curve { class: "target-boundary", stroke: "#2ca02c", runs: vec![target] }, 0));
    let on_circle: Vec<ComplexValue> = turn.iter().map(|&t| ComplexValue::from_polar(boundary.radius, t)).collect();
    let (runs, dropped) = image(&spec, &on_circle);
    images.push((Curve { class: "radius-image", stroke: "#d62728", runs }, dropped));

    let dropped_segments = images.iter().map(|(_, d)| d).sum();
    Ok(GridImage { spec, curves: images.into_iter().map(|(c, _)| c).collect(), dropped_segments })
}

pub fn run(cfg: &Config) -> anyhow::Result<String> {
    let g = compute(cfg)?;
    let s = g.spec;
    let comments = vec![
        format!(
            "w = A*J_{n}(z) + eps*B*Y_{n}(z), A = {}{:+}i, B = {}{:+}i, eps = {}",
            s.a.re,
            s.a.im,
            s.b.re,
            s.b.im,
            s.epsilon,
            n = s.n
        ),
        format!("dropped segments: {}", g.dropped_segments),
    ];
    Ok(svg::render(&g.curves, &comments))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn cut_crossing() {
        assert!(crosses_cut(c(-1.0, 0.1), c(-1.0, -0.1)));
        assert!(!crosses_cut(c(1.0, 0.1), c(1.0, -0.1)));
        assert!(!crosses_cut(c(-1.0, 0.1), c(-1.0, 0.2)));
    }

    #[test]
    fn failed_samples_split_runs() {
        let zs: Vec<ComplexValue> = (0..6).map(|i| c(1.0 + i as f64, 0.0)).collect();
        let ws = vec![Some(zs[0]), Some(zs[1]), None, Some(zs[3]), Some(zs[4]), Some(zs[5])];
        let (r, dropped) = runs(&zs, &ws, false);
        assert_eq!(dropped, 2);
        assert_eq!(r, vec![vec![zs[0], zs[1]], vec![zs[3], zs[4], zs[5]]]);
    }

    #[test]
    fn crossing_segments_are_dropped_only_with_y() {
        let zs = vec![c(-1.0, 0.1), c(-1.0, -0.1), c(-0.9, -0.2)];
        let ws: Vec<_> = zs.iter().map(|&z| Some(z)).collect();
        assert_eq!(runs(&zs, &ws, false).1, 0);
        let (r, dropped) = runs(&zs, &ws, true);
        assert_eq!(dropped, 1);
        assert_eq!(r.len(), 1);
    }
}
