use besselmap::error_analysis::{epsilon_sweep, ConvergenceReport, SweepConfig, CLAIMED_EXPONENT};
use besselmap::mapping::MappingSpec;
use besselmap::tolerances::TOL;
use besselmap::ComplexValue;

use crate::config::Config;
use crate::csv::{num, CsvReport};
use crate::params::{self, SHAPE_KEYS};

pub const HEADER: &[&str] = &["epsilon", "sup_error", "l2_error", "re_A", "im_A", "re_B", "im_B"];

pub fn allowed_keys() -> Vec<&'static str> {
    params::keys(&[
        SHAPE_KEYS,
        &["n", "epsilons", "samples", "mode", "recalibrate", "synthetic_constant", "synthetic_exponent"],
    ])
}

fn sweep_config(cfg: &Config) -> anyhow::Result<SweepConfig> {
    let n = params::order(cfg)?;
    let mut sc = SweepConfig::default_grid(n);
    if let Some(eps) = cfg.get_list("epsilons", |s| s.parse::<f64>().map_err(|e| format!("cannot parse {s:?}: {e}")))? {
        sc.epsilons = eps;
    }
    sc.validate().map_err(|e| cfg.invalid("epsilons", e.to_string()))?;
    sc.samples = params::positive_count(cfg, "samples", sc.samples, 16)?;
    sc.mode = params::error_mode(cfg)?;
    sc.recalibrate = params::flag(cfg, "recalibrate", sc.recalibrate)?;
    Ok(sc)
}

/// Exact `C·ε^p` errors, used to check the fit and the report format.
fn synthetic(cfg: &Config, sc: &SweepConfig, c: f64, radius: f64) -> anyhow::Result<ConvergenceReport> {
    if !(c.is_finite() && c > 0.0) {
        return Err(cfg.invalid("synthetic_constant", format!("must be finite and > 0, got {c}")).into());
    }
    let p: f64 = cfg.get_or("synthetic_exponent", CLAIMED_EXPONENT)?;
    if !p.is_finite() {
        return Err(cfg.invalid("synthetic_exponent", "must be finite").into());
    }
    let errors: Vec<f64> = sc.epsilons.iter().map(|e| c * e.powf(p)).collect();
    let l2 = errors.iter().map(|e| e * (2.0 * std::f64::consts::PI).sqrt()).collect();
    let zero = ComplexValue::new(0.0, 0.0);
    let specs = sc.epsilons.iter().map(|&e| MappingSpec { a: zero, b: zero, n: sc.n, epsilon: e }).collect();
    Ok(ConvergenceReport::from_sweep(sc.epsilons.clone(), errors, l2, specs, TOL.error_floor_rel * radius)?)
}

pub fn run(cfg: &Config) -> anyhow::Result<String> {
    let sc = sweep_config(cfg)?;
    let report = match cfg.get::<f64>("synthetic_constant")? {
        Some(c) => synthetic(cfg, &sc, c, params::positive(cfg, "radius", params::DEFAULT_RADIUS)?)?,
        None => {
            if cfg.contains("synthetic_exponent") {
                return Err(cfg.invalid("synthetic_exponent", "needs `synthetic_constant`").into());
            }
            // The largest ε is the binding case for positivity.
            let shape = params::positive_shape(cfg, sc.epsilons[0], "epsilons")?;
            epsilon_sweep(&shape, &sc)?
        }
    };
    Ok(render(&report))
}

/// Rows per ε, then `key,value,reference` footer rows padded to the header
/// width. The reference column holds the exponent the bound is checked at.
pub fn render(report: &ConvergenceReport) -> String {
    let mut csv = CsvReport::new(HEADER);
    for i in 0..report.epsilons.len() {
        let s = &report.specs[i];
        csv.push(vec![
            num(report.epsilons[i]),
            num(report.errors[i]),
            num(report.l2_errors[i]),
            num(s.a.re),
            num(s.a.im),
            num(s.b.re),
            num(s.b.im),
        ]);
    }
    let reference = num(CLAIMED_EXPONENT);
    let footer = [
        ("fitted_order_p", num(report.fitted_order_p), reference.clone()),
        ("fitted_constant_C", num(report.fitted_constant_c), String::new()),
        ("r_squared", num(report.fit_r_squared), String::new()),
        ("bound_holds", report.bound_holds.to_string(), reference.clone()),
        ("bound_margin", num(report.bound_margin), reference),
    ];
    for (key, value, reference) in footer {
        let mut row = vec![key.to_string(), value, reference];
        row.resize(HEADER.len(), String::new());
        csv.push(row);
    }
    csv.render()
}
