//! Domain objects built from a [`Config`], validated before any computation.

use besselmap::boundary::{random_boundary, FourierMode, PerturbedBoundary};
use besselmap::error_analysis::ErrorMode;
use besselmap::mapping::{Annulus, MappingSpec, PolarGrid};
use besselmap::tolerances::TOL;
use besselmap::ComplexValue;

use crate::config::{colon_numbers, Config, ConfigError};

pub const SPEC_KEYS: &[&str] = &["n", "a_re", "a_im", "b_re", "b_im", "epsilon"];
pub const REGION_KEYS: &[&str] = &["r_min", "r_max", "n_radial", "n_angular", "cut_margin"];
pub const SHAPE_KEYS: &[&str] = &["radius", "a0", "modes", "seed", "modes_k", "decay"];

pub const DEFAULT_RADIUS: f64 = 5.0;

pub fn keys(groups: &[&[&'static str]]) -> Vec<&'static str> {
    groups.iter().flat_map(|g| g.iter().copied()).collect()
}

pub fn order(cfg: &Config) -> Result<u32, ConfigError> {
    let n: u32 = cfg.get_or("n", 0)?;
    if n > 50 {
        return Err(cfg.invalid("n", format!("order {n} exceeds the supported maximum of 50")));
    }
    Ok(n)
}

pub fn epsilon(cfg: &Config) -> Result<f64, ConfigError> {
    let eps: f64 = cfg.get_or("epsilon", 0.0)?;
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(cfg.invalid("epsilon", format!("must be finite and >= 0, got {eps}")));
    }
    Ok(eps)
}

pub fn positive_count(cfg: &Config, key: &str, default: usize, min: usize) -> Result<usize, ConfigError> {
    let v: usize = cfg.get_or(key, default)?;
    if v < min {
        return Err(cfg.invalid(key, format!("must be at least {min}, got {v}")));
    }
    Ok(v)
}

pub fn positive(cfg: &Config, key: &str, default: f64) -> Result<f64, ConfigError> {
    let v: f64 = cfg.get_or(key, default)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(cfg.invalid(key, format!("must be finite and > 0, got {v}")));
    }
    Ok(v)
}

/// `w = A·Jₙ + ε·B·Yₙ`; defaults `A = 1`, `B = 0`, `n = 0`, `ε = 0`.
pub fn spec(cfg: &Config) -> Result<MappingSpec, ConfigError> {
    let n = order(cfg)?;
    let eps = epsilon(cfg)?;
    let mut parts = [0.0f64; 4];
    for (slot, (key, default)) in parts.iter_mut().zip([("a_re", 1.0), ("a_im", 0.0), ("b_re", 0.0), ("b_im", 0.0)]) {
        *slot = cfg.get_or(key, default)?;
        if !slot.is_finite() {
            return Err(cfg.invalid(key, "must be finite"));
        }
    }
    let a = ComplexValue::new(parts[0], parts[1]);
    let b = ComplexValue::new(parts[2], parts[3]);
    MappingSpec::new(a, b, n, eps).map_err(|e| cfg.invalid("a_re", e.to_string()))
}

/// Annulus and polar grid. The radii default to `0.1·R ..= 1.5·R` for the
/// configured (or default) boundary radius.
pub fn region(cfg: &Config, grid_default: (usize, usize)) -> Result<(Annulus, PolarGrid), ConfigError> {
    let radius = positive(cfg, "radius", DEFAULT_RADIUS)?;
    let around = Annulus::around_radius(radius);
    let mut region = Annulus::new(cfg.get_or("r_min", around.r_min)?, cfg.get_or("r_max", around.r_max)?);
    region.cut_margin = cfg.get_or("cut_margin", TOL.cut_margin)?;
    if let Err(e) = region.validate() {
        let margin_ok = region.cut_margin >= 0.0 && region.cut_margin < std::f64::consts::FRAC_PI_2;
        let key = match (margin_ok, cfg.contains("r_min")) {
            (false, _) => "cut_margin",
            (true, true) => "r_min",
            (true, false) => "r_max",
        };
        return Err(cfg.invalid(key, e.to_string()));
    }
    let grid = PolarGrid::new(
        positive_count(cfg, "n_radial", grid_default.0, 2)?,
        positive_count(cfg, "n_angular", grid_default.1, 2)?,
    );
    Ok((region, grid))
}

fn mode_item(s: &str) -> Result<FourierMode, String> {
    let [k, a, b] = colon_numbers::<3>(s)?;
    if !(k >= 1.0 && k.fract() == 0.0 && k <= f64::from(u32::MAX)) {
        return Err(format!("mode index must be a positive integer, got {k}"));
    }
    Ok(FourierMode { k: k as u32, a, b })
}

/// Boundary shape at perturbation `eps`. Either explicit `modes = k:a:b, …`
/// (with optional `a0`), or a random shape from `seed`, `modes_k`, `decay`.
/// Without either the shape is `f(θ) = cos θ`.
pub fn shape(cfg: &Config, eps: f64) -> Result<PerturbedBoundary, ConfigError> {
    let radius = positive(cfg, "radius", DEFAULT_RADIUS)?;
    if let Some(seed) = cfg.get::<u64>("seed")? {
        for key in ["modes", "a0"] {
            if cfg.contains(key) {
                return Err(cfg.invalid(key, "cannot be combined with `seed`"));
            }
        }
        let k_max: u32 = cfg.get_or("modes_k", 8)?;
        let decay: f64 = cfg.get_or("decay", 2.0)?;
        return random_boundary(seed, radius, eps, k_max, decay).map_err(|e| cfg.invalid("seed", e.to_string()));
    }
    for key in ["modes_k", "decay"] {
        if cfg.contains(key) {
            return Err(cfg.invalid(key, "only meaningful together with `seed`"));
        }
    }
    let modes = cfg.get_list("modes", mode_item)?.unwrap_or_else(|| vec![FourierMode { k: 1, a: 1.0, b: 0.0 }]);
    let a0: f64 = cfg.get_or("a0", 0.0)?;
    PerturbedBoundary::new(radius, eps, a0, modes).map_err(|e| cfg.invalid("modes", e.to_string()))
}

/// [`shape`] plus the positivity precondition `ε·sup|f| < R`.
pub fn positive_shape(cfg: &Config, eps: f64, eps_key: &str) -> Result<PerturbedBoundary, ConfigError> {
    let b = shape(cfg, eps)?;
    b.ensure_positive().map_err(|e| cfg.invalid(eps_key, e.to_string()))?;
    Ok(b)
}

pub fn error_mode(cfg: &Config) -> Result<ErrorMode, ConfigError> {
    match cfg.raw("mode") {
        None => Ok(ErrorMode::default()),
        Some(s) => {
            ErrorMode::parse(s).ok_or_else(|| cfg.invalid("mode", format!("expected `planar` or `modulus`, got {s:?}")))
        }
    }
}

pub fn flag(cfg: &Config, key: &str, default: bool) -> Result<bool, ConfigError> {
    cfg.get_or(key, default)
}
