//! Boundary error of the mapping, least-squares calibration of `(A, B)`,
//! ε-sweeps and log-log order fitting.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bessel::{bessel_j, bessel_y};
use crate::boundary::{boundary_point, f_theta, PerturbedBoundary};
use crate::mapping::{map_point, MappingSpec};
use crate::tolerances::TOL;
use crate::{ComplexValue, Error, Result};

/// How the mapped circle is compared with the target boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorMode {
    /// `| |w(zⱼ)| − (R + ε·f(θⱼ)) |`.
    Modulus,
    /// `| w(zⱼ) − (R + ε·f(θⱼ))·e^{iθⱼ} |`.
    #[default]
    Planar,
}

impl ErrorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorMode::Modulus => "modulus",
            ErrorMode::Planar => "planar",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "modulus" => Some(ErrorMode::Modulus),
            "planar" => Some(ErrorMode::Planar),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorProfile {
    pub epsilon: f64,
    pub mode: ErrorMode,
    pub thetas: Vec<f64>,
    pub pointwise: Vec<f64>,
    pub sup_error: f64,
    /// `√((2π/M)·Σ pointwise²)`.
    pub l2_error: f64,
}

fn sample_angles(m: usize) -> Vec<f64> {
    (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
}

/// Error between `w` on `|z| = R` and the perturbed boundary at `M`
/// equispaced angles.
pub fn boundary_error(
    spec: &MappingSpec,
    boundary: &PerturbedBoundary,
    m: usize,
    mode: ErrorMode,
) -> Result<ErrorProfile> {
    if spec.epsilon != boundary.epsilon {
        return Err(Error::EpsilonMismatch { mapping: spec.epsilon, boundary: boundary.epsilon });
    }
    if m < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 boundary samples, got {m}")));
    }
    spec.validate()?;
    let thetas = sample_angles(m);
    let pointwise: Vec<f64> = thetas
        .iter()
        .map(|&theta| {
            let z = ComplexValue::from_polar(boundary.radius, theta);
            let w = map_point(spec, z)?;
            Ok(match mode {
                ErrorMode::Modulus => (w.norm() - boundary.radius_at(theta)).abs(),
                ErrorMode::Planar => (w - boundary_point(boundary, theta)?).norm(),
            })
        })
        .collect::<Result<_>>()?;
    let sup_error = pointwise.iter().fold(0.0_f64, |a, &b| a.max(b));
    let l2_error = ((2.0 * PI / m as f64) * pointwise.iter().map(|p| p * p).sum::<f64>()).sqrt();
    Ok(ErrorProfile { epsilon: boundary.epsilon, mode, thetas, pointwise, sup_error, l2_error })
}

/// Sampled basis functions and target on `zⱼ = R·e^{iθⱼ}`.
struct LeastSquaresSample {
    j: Vec<ComplexValue>,
    y: Vec<ComplexValue>,
    target: Vec<ComplexValue>,
}

impl LeastSquaresSample {
    fn new(boundary: &PerturbedBoundary, n: u32, m: usize, with_y: bool) -> Result<Self> {
        let mut s = Self { j: Vec::with_capacity(m), y: Vec::with_capacity(m), target: Vec::with_capacity(m) };
        for theta in sample_angles(m) {
            let z = ComplexValue::from_polar(boundary.radius, theta);
            s.j.push(bessel_j(n, z)?.value);
            if with_y {
                s.y.push(bessel_y(n, z)?.value);
            }
            s.target.push(boundary_point(boundary, theta)?);
        }
        Ok(s)
    }

    fn residual(&self, a: ComplexValue, b_eff: ComplexValue) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.j.len() {
            let y = self.y.get(i).copied().unwrap_or_default();
            sum += (a * self.j[i] + b_eff * y - self.target[i]).norm_sqr();
        }
        sum
    }
}

/// Outcome of [`calibrate_detailed`]: the spec plus the raw least-squares
/// coefficients `(A, B′ = ε·B)` and the residual `Σⱼ |w(zⱼ) − γⱼ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub spec: MappingSpec,
    pub a: ComplexValue,
    pub b_eff: ComplexValue,
    pub residual: f64,
}

/// Least-squares `(A, B)` so that `w(R·e^{iθⱼ})` best matches the boundary.
pub fn calibrate(boundary: &PerturbedBoundary, n: u32, m: usize) -> Result<MappingSpec> {
    Ok(calibrate_detailed(boundary, n, m)?.spec)
}

/// Solves the 2×2 Hermitian normal equations
///
/// `[⟨J,J⟩ ⟨J,Y⟩; ⟨Y,J⟩ ⟨Y,Y⟩]·[A; B′] = [⟨J,γ⟩; ⟨Y,γ⟩]`, `⟨u,v⟩ = Σ ūⱼvⱼ`,
///
/// by Cramer's rule. With `ε = 0` only `A` is fitted and `B = 0`.
pub fn calibrate_detailed(boundary: &PerturbedBoundary, n: u32, m: usize) -> Result<Calibration> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 calibration samples, got {m}")));
    }
    boundary.ensure_positive()?;
    let with_y = boundary.epsilon > 0.0;
    let s = LeastSquaresSample::new(boundary, n, m, with_y)?;
    let dot =
        |u: &[ComplexValue], v: &[ComplexValue]| -> ComplexValue { u.iter().zip(v).map(|(a, b)| a.conj() * b).sum() };
    let jj = dot(&s.j, &s.j).re;
    let jg = dot(&s.j, &s.target);
    let zero = ComplexValue::new(0.0, 0.0);

    let (a, b_eff) = if with_y {
        let yy = dot(&s.y, &s.y).re;
        let jy = dot(&s.j, &s.y);
        let yg = dot(&s.y, &s.target);
        let det = jj * yy - jy.norm_sqr();
        if !(det > TOL.normal_eq_rel_det * jj * yy) {
            return Err(Error::SingularNormalEquations);
        }
        let a = (jg * yy - jy * yg) / det;
        let b = (yg * jj - jy.conj() * jg) / det;
        (a, b)
    } else {
        if !(jj > 0.0) {
            return Err(Error::SingularNormalEquations);
        }
        (jg / jj, zero)
    };
    let b = if with_y { b_eff / boundary.epsilon } else { zero };
    let spec = MappingSpec::new(a, b, n, boundary.epsilon)?;
    Ok(Calibration { spec, a, b_eff, residual: s.residual(a, b_eff) })
}

/// `Σⱼ |A·Jₙ(zⱼ) + B′·Yₙ(zⱼ) − γⱼ|²` for arbitrary `(A, B′)`.
pub fn calibration_residual(
    boundary: &PerturbedBoundary,
    n: u32,
    m: usize,
    a: ComplexValue,
    b_eff: ComplexValue,
) -> Result<f64> {
    let s = LeastSquaresSample::new(boundary, n, m, b_eff.norm() > 0.0 || boundary.epsilon > 0.0)?;
    Ok(s.residual(a, b_eff))
}

/// Log-log least-squares fit `log E = log C + p·log ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderFit {
    pub order: f64,
    pub constant: f64,
    pub r_squared: f64,
    /// Pairs dropped because their error was exactly zero.
    pub excluded: usize,
}

/// Ordinary least squares on `(log ε, log E)`.
pub fn fit_order(pairs: &[(f64, f64)]) -> Result<OrderFit> {
    let mut excluded = 0;
    let mut xs = Vec::with_capacity(pairs.len());
    let mut ys = Vec::with_capacity(pairs.len());
    for &(eps, err) in pairs {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::DegenerateInput(format!("epsilon must be finite and > 0, got {eps}")));
        }
        if !(err.is_finite() && err >= 0.0) {
            return Err(Error::DegenerateInput(format!("error must be finite and >= 0, got {err}")));
        }
        if err == 0.0 {
            excluded += 1;
            continue;
        }
        xs.push(eps.ln());
        ys.push(err.ln());
    }
    if xs.len() < 3 {
        return Err(Error::DegenerateInput(format!("need at least 3 positive errors, got {}", xs.len())));
    }
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateInput("epsilons must be distinct".into()));
    }
    let order = sxy / sxx;
    let intercept = my - order * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - order * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) } else { 1.0 };
    Ok(OrderFit { order, constant: intercept.exp(), r_squared, excluded })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Strictly decreasing.
    pub epsilons: Vec<f64>,
    /// Sup-norm boundary error per ε.
    pub errors: Vec<f64>,
    pub l2_errors: Vec<f64>,
    /// Mapping used at each ε.
    pub specs: Vec<MappingSpec>,
    pub fitted_order_p: f64,
    pub fitted_constant_c: f64,
    pub fit_r_squared: f64,
    /// Errors left out of the fit (zero or below `error_floor_rel · R`).
    pub excluded: usize,
    /// `errors[i] ≤ C_fit·εᵢ²` for all `i`.
    pub bound_holds: bool,
    /// `maxᵢ (errors[i]/εᵢ²) / C_fit`.
    pub bound_margin: f64,
}

/// The exponent the sweep checks the bound against.
pub const CLAIMED_EXPONENT: f64 = 2.0;

impl ConvergenceReport {
    /// Fits the order and evaluates the `C·ε²` bound. Errors at or below
    /// `floor` are excluded from the fit.
    pub fn from_sweep(
        epsilons: Vec<f64>,
        errors: Vec<f64>,
        l2_errors: Vec<f64>,
        specs: Vec<MappingSpec>,
        floor: f64,
    ) -> Result<Self> {
        let pairs: Vec<(f64, f64)> = epsilons.iter().copied().zip(errors.iter().copied()).collect();
        let kept: Vec<(f64, f64)> = pairs.iter().copied().filter(|&(_, e)| e > floor).collect();
        let fit = fit_order(&kept)?;
        let mut report = Self {
            excluded: pairs.len() - kept.len() + fit.excluded,
            epsilons,
            errors,
            l2_errors,
            specs,
            fitted_order_p: fit.order,
            fitted_constant_c: fit.constant,
            fit_r_squared: fit.r_squared,
            bound_holds: false,
            bound_margin: 0.0,
        };
        let (holds, margin) = validate_bound(&report, fit.constant, CLAIMED_EXPONENT);
        report.bound_holds = holds;
        report.bound_margin = margin;
        Ok(report)
    }
}

/// `errors[i] ≤ C·εᵢ^exponent` for every `i`, and the worst ratio
/// `maxᵢ (errors[i]/εᵢ^exponent)/C`.
pub fn validate_bound(report: &ConvergenceReport, c: f64, exponent: f64) -> (bool, f64) {
    let mut holds = true;
    let mut worst = f64::NEG_INFINITY;
    for (&eps, &err) in report.epsilons.iter().zip(&report.errors) {
        let scale = eps.powf(exponent);
        holds &= err <= c * scale;
        worst = worst.max(err / scale / c);
    }
    (holds, worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n: u32,
    pub epsilons: Vec<f64>,
    pub samples: usize,
    pub mode: ErrorMode,
    /// Calibrate per ε; otherwise calibrate once at the largest ε.
    pub recalibrate: bool,
}

impl SweepConfig {
    /// `ε ∈ {1e−1, 3e−2, 1e−2, 3e−3, 1e−3, 3e−4, 1e−4}`, `M = 512`, planar,
    /// recalibrated, for order `n`.
    pub fn default_grid(n: u32) -> Self {
        Self {
            n,
            epsilons: vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4],
            samples: 512,
            mode: ErrorMode::Planar,
            recalibrate: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilons.len() < 4 {
            return Err(Error::InvalidArgument(format!(
                "an epsilon sweep needs at least 4 values, got {}",
                self.epsilons.len()
            )));
        }
        if self.epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidArgument("sweep epsilons must be finite and > 0".into()));
        }
        if self.epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("sweep epsilons must be strictly decreasing".into()));
        }
        Ok(())
    }
}

/// Sup-norm boundary error for each ε of the sweep applied to `shape`
/// (whose own ε is ignored), followed by the order fit.
pub fn epsilon_sweep(shape: &PerturbedBoundary, config: &SweepConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let fixed = if config.recalibrate {
        None
    } else {
        Some(calibrate(&shape.with_epsilon(config.epsilons[0])?, config.n, config.samples)?)
    };
    let rows: Vec<(f64, f64, MappingSpec)> = config
        .epsilons
        .par_iter()
        .map(|&eps| {
            let boundary = shape.with_epsilon(eps)?;
            let spec = match fixed {
                Some(base) => MappingSpec { epsilon: eps, ..base },
                None => calibrate(&boundary, config.n, config.samples)?,
            };
            let profile = boundary_error(&spec, &boundary, config.samples, config.mode)?;
            Ok((profile.sup_error, profile.l2_error, spec))
        })
        .collect::<Result<_>>()?;
    let errors = rows.iter().map(|r| r.0).collect();
    let l2 = rows.iter().map(|r| r.1).collect();
    let specs = rows.iter().map(|r| r.2).collect();
    ConvergenceReport::from_sweep(config.epsilons.clone(), errors, l2, specs, TOL.error_floor_rel * shape.radius)
}

/// Largest `|f|` over the sampled angles; used by property checks.
pub fn sampled_sup_f(boundary: &PerturbedBoundary, m: usize) -> f64 {
    sample_angles(m).into_iter().map(|t| f_theta(boundary, t).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_power_laws() {
        let pairs: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3].iter().map(|&e| (e, 7.0 * e * e)).collect();
        let fit = fit_order(&pairs).unwrap();
        assert_relative_eq!(fit.order, 2.0, epsilon = 1e-10);
        assert_relative_eq!(fit.constant, 7.0, epsilon = 1e-9);
        assert_relative_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        let pairs: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3].iter().map(|&e| (e, 3.0 * e)).collect();
        let fit = fit_order(&pairs).unwrap();
        assert_relative_eq!(fit.order, 1.0, epsilon = 1e-10);
        assert_relative_eq!(fit.constant, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_fits() {
        assert!(fit_order(&[(0.1, 1.0), (0.01, 0.1)]).is_err());
        assert!(fit_order(&[(0.1, 1.0), (0.1, 0.1), (0.1, 0.2)]).is_err());
        assert!(fit_order(&[(0.1, -1.0), (0.01, 0.1), (0.001, 0.01)]).is_err());
        // Zero errors are excluded and counted.
        let fit = fit_order(&[(1.0, 0.0), (0.1, 0.1), (0.01, 0.01), (0.001, 0.001)]).unwrap();
        assert_eq!(fit.excluded, 1);
        assert!(fit_order(&[(1.0, 0.0), (0.1, 0.1), (0.01, 0.01)]).is_err());
    }

    fn report(eps: &[f64], errors: &[f64]) -> ConvergenceReport {
        ConvergenceReport {
            epsilons: eps.to_vec(),
            errors: errors.to_vec(),
            l2_errors: errors.to_vec(),
            specs: vec![],
            fitted_order_p: 2.0,
            fitted_constant_c: 1.0,
            fit_r_squared: 1.0,
            excluded: 0,
            bound_holds: true,
            bound_margin: 1.0,
        }
    }

    #[test]
    fn bound_validation() {
        let eps = [0.1, 0.01, 0.001];
        let errs: Vec<f64> = eps.iter().map(|e| 3.0 * e * e).collect();
        let (holds, margin) = validate_bound(&report(&eps, &errs), 3.0, 2.0);
        assert!(holds);
        assert_relative_eq!(margin, 1.0, epsilon = 1e-12);
        let mut doubled = errs.clone();
        doubled[1] *= 2.0;
        let (holds, margin) = validate_bound(&report(&eps, &doubled), 3.0, 2.0);
        assert!(!holds);
        assert_relative_eq!(margin, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn sweep_config_validation() {
        let mut c = SweepConfig::default_grid(0);
        assert!(c.validate().is_ok());
        c.epsilons = vec![0.1, 0.01];
        assert!(c.validate().is_err());
        c.epsilons = vec![0.1, 0.01, 0.02, 0.001];
        assert!(c.validate().is_err());
    }

    #[test]
    fn epsilon_mismatch() {
        let b = PerturbedBoundary::circle(1.0).unwrap().with_epsilon(0.1).unwrap();
        let spec = MappingSpec::new(ComplexValue::new(1.0, 0.0), ComplexValue::new(0.0, 0.0), 0, 0.2).unwrap();
        assert!(matches!(boundary_error(&spec, &b, 64, ErrorMode::Planar), Err(Error::EpsilonMismatch { .. })));
    }
}
