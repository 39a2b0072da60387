use besselmap::error_analysis::calibrate_detailed;

use crate::config::Config;
use crate::csv::num;
use crate::params::{self, SHAPE_KEYS};

pub fn allowed_keys() -> Vec<&'static str> {
    params::keys(&[SHAPE_KEYS, &["n", "epsilon", "samples"]])
}

/// Least-squares `(A, B)` for the configured boundary, written as config
/// lines that `verify` and `map-grid` accept.
pub fn run(cfg: &Config) -> anyhow::Result<String> {
    let n = params::order(cfg)?;
    let eps = params::epsilon(cfg)?;
    let samples = params::positive_count(cfg, "samples", 512, 2)?;
    let boundary = params::positive_shape(cfg, eps, "epsilon")?;
    let cal = calibrate_detailed(&boundary, n, samples)?;
    let s = cal.spec;
    Ok(format!(
        "# least-squares fit on {samples} samples of r = {} + eps*f(theta), residual {}\n\
         n = {}\nepsilon = {}\na_re = {}\na_im = {}\nb_re = {}\nb_im = {}\n",
        num(boundary.radius),
        num(cal.residual),
        s.n,
        num(s.epsilon),
        num(s.a.re),
        num(s.a.im),
        num(s.b.re),
        num(s.b.im),
    ))
}
