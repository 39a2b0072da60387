use besselmap::bessel::{bessel_j, bessel_y, eval_with, registry, BesselResult, Kind};
use besselmap::{ComplexValue, Result};
use rayon::prelude::*;

use crate::config::{colon_numbers, Config, ConfigError};
use crate::csv::{num, CsvReport};
use crate::params::{self, REGION_KEYS};

pub const HEADER: &[&str] =
    &["re_z", "im_z", "re_Jn", "im_Jn", "re_Yn", "im_Yn", "method_J", "method_Y", "est_err_J", "est_err_Y"];

pub fn allowed_keys() -> Vec<&'static str> {
    params::keys(&[&["n", "points", "method", "radius"], REGION_KEYS])
}

fn point(s: &str) -> std::result::Result<ComplexValue, String> {
    let [re, im] = colon_numbers::<2>(s)?;
    Ok(ComplexValue::new(re, im))
}

/// Explicit `points = re:im, …`, otherwise the polar grid of the region.
pub fn points(cfg: &Config) -> std::result::Result<Vec<ComplexValue>, ConfigError> {
    if let Some(list) = cfg.get_list("points", point)? {
        for key in REGION_KEYS {
            if cfg.contains(key) {
                return Err(cfg.invalid(key, "cannot be combined with `points`"));
            }
        }
        return Ok(list);
    }
    let (region, grid) = params::region(cfg, (4, 16))?;
    Ok(region.grid_points(grid))
}

/// `None` selects automatically.
fn method(cfg: &Config) -> std::result::Result<Option<&'static str>, ConfigError> {
    match cfg.raw("method") {
        None | Some("auto") => Ok(None),
        Some(name) => registry()
            .names()
            .into_iter()
            .find(|n| *n == name)
            .map(Some)
            .ok_or_else(|| cfg.invalid("method", format!("expected `auto` or one of {:?}", registry().names()))),
    }
}

fn cells(r: Result<BesselResult>) -> [String; 4] {
    match r {
        Ok(v) => [num(v.value.re), num(v.value.im), v.method.as_str().to_string(), num(v.est_abs_error)],
        Err(e) => [String::new(), String::new(), e.code().to_string(), String::new()],
    }
}

/// `Jₙ` and `Yₙ` at every point; per-point failures become rows carrying the
/// error code in the method column.
pub fn run(cfg: &Config) -> anyhow::Result<String> {
    let n = params::order(cfg)?;
    let pts = points(cfg)?;
    let method = method(cfg)?;
    let rows: Vec<Vec<String>> = pts
        .par_iter()
        .map(|&z| {
            let (j, y) = match method {
                None => (bessel_j(n, z), bessel_y(n, z)),
                Some(name) => {
                    let regime = registry().get(name).expect("name taken from the registry");
                    (eval_with(regime, Kind::First, n, z), eval_with(regime, Kind::Second, n, z))
                }
            };
            let [jr, ji, jm, je] = cells(j);
            let [yr, yi, ym, ye] = cells(y);
            vec![num(z.re), num(z.im), jr, ji, yr, yi, jm, ym, je, ye]
        })
        .collect();
    let mut report = CsvReport::new(HEADER);
    for row in rows {
        report.push(row);
    }
    Ok(report.render())
}
