use besselmap::mapping::conformality_scan_with_step;
use besselmap::tolerances::TOL;

use crate::config::Config;
use crate::csv::{num, CsvReport};
use crate::params::{self, REGION_KEYS, SPEC_KEYS};

pub const HEADER: &[&str] = &["re_z", "im_z", "kind", "cr_residual", "deriv_modulus"];

pub fn allowed_keys() -> Vec<&'static str> {
    params::keys(&[SPEC_KEYS, REGION_KEYS, &["radius", "cr_tol", "deriv_tol", "h"]])
}

/// Conformality scan: one row per violation in grid order, then
/// `summary,<grid points>,summary,<max CR residual>,<min |w′|>`.
pub fn run(cfg: &Config) -> anyhow::Result<String> {
    let spec = params::spec(cfg)?;
    let (region, grid) = params::region(cfg, (16, 64))?;
    let cr_tol = params::positive(cfg, "cr_tol", 1e-6)?;
    let deriv_tol = params::positive(cfg, "deriv_tol", TOL.deriv_tol)?;
    let h = params::positive(cfg, "h", TOL.cr_step)?;
    if h >= 0.1 {
        return Err(cfg.invalid("h", format!("stencil step must be below 0.1, got {h}")).into());
    }
    let scan = conformality_scan_with_step(&spec, &region, grid, cr_tol, deriv_tol, h)?;
    let mut report = CsvReport::new(HEADER);
    for v in &scan.violation_points {
        report.push(vec![
            num(v.z.re),
            num(v.z.im),
            v.kind.as_str().to_string(),
            num(v.cr_residual),
            num(v.deriv_modulus),
        ]);
    }
    report.push(vec![
        "summary".into(),
        scan.grid_points_checked.to_string(),
        "summary".into(),
        num(scan.cr_max_residual),
        num(scan.derivative_min_modulus),
    ]);
    Ok(report.render())
}
