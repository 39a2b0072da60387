use std::f64::consts::PI;

use rayon::prelude::*;

use super::{cauchy_riemann_residual, map_derivative, MappingSpec};
use crate::tolerances::TOL;
use crate::{ComplexValue, Error, Result};

/// `r_min ≤ |z| ≤ r_max` minus the sector `|arg z − π| < cut_margin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    pub r_min: f64,
    pub r_max: f64,
    pub cut_margin: f64,
}

impl Annulus {
    /// Annulus with the default excluded sector around the negative real axis.
    pub fn new(r_min: f64, r_max: f64) -> Self {
        Self { r_min, r_max, cut_margin: TOL.cut_margin }
    }

    /// `0.1·R ≤ |z| ≤ 1.5·R`.
    pub fn around_radius(radius: f64) -> Self {
        Self::new(0.1 * radius, 1.5 * radius)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min.is_finite() && self.r_max.is_finite() && self.r_min > 0.0 && self.r_min < self.r_max) {
            return Err(Error::InvalidRegion(format!(
                "need 0 < r_min < r_max, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if !(self.cut_margin >= 0.0 && self.cut_margin < PI / 2.0) {
            return Err(Error::InvalidRegion(format!("cut margin {} outside [0, pi/2)", self.cut_margin)));
        }
        Ok(())
    }

    pub fn contains(&self, z: ComplexValue) -> bool {
        let r = z.norm();
        r >= self.r_min && r <= self.r_max && (PI - z.arg().abs()) >= self.cut_margin
    }

    /// Radial-major polar grid: radii outer, angles inner. Radii span
    /// `[r_min, r_max]` inclusive; angles span `[−π + margin, π − margin]`
    /// inclusive, or `[−π, π)` when the margin is zero.
    pub fn grid_points(&self, grid: PolarGrid) -> Vec<ComplexValue> {
        let radii = linspace(self.r_min, self.r_max, grid.n_radial);
        let angles = if self.cut_margin > 0.0 {
            linspace(-PI + self.cut_margin, PI - self.cut_margin, grid.n_angular)
        } else {
            (0..grid.n_angular).map(|j| -PI + 2.0 * PI * j as f64 / grid.n_angular as f64).collect()
        };
        radii.iter().flat_map(|&r| angles.iter().map(move |&t| ComplexValue::from_polar(r, t))).collect()
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|i| a + (b - a) * i as f64 / last).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarGrid {
    pub n_radial: usize,
    pub n_angular: usize,
}

impl PolarGrid {
    pub fn new(n_radial: usize, n_angular: usize) -> Self {
        Self { n_radial, n_angular }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_radial < 2 || self.n_angular < 2 {
            return Err(Error::InvalidRegion(format!(
                "grid dimensions must be >= 2, got {}x{}",
                self.n_radial, self.n_angular
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    CrViolation,
    DerivativeNearZero,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::CrViolation => "cr_violation",
            ViolationKind::DerivativeNearZero => "derivative_near_zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub z: ComplexValue,
    pub kind: ViolationKind,
    pub cr_residual: f64,
    pub deriv_modulus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalityReport {
    pub grid_points_checked: usize,
    pub cr_max_residual: f64,
    pub derivative_min_modulus: f64,
    /// Grid order; a point failing both tests is listed twice, CR first.
    pub violation_points: Vec<Violation>,
}

/// Cauchy–Riemann residual and `|w′|` at every grid point, with the default
/// stencil step.
pub fn conformality_scan(
    spec: &MappingSpec,
    region: &Annulus,
    grid: PolarGrid,
    cr_tol: f64,
    deriv_tol: f64,
) -> Result<ConformalityReport> {
    conformality_scan_with_step(spec, region, grid, cr_tol, deriv_tol, TOL.cr_step)
}

pub fn conformality_scan_with_step(
    spec: &MappingSpec,
    region: &Annulus,
    grid: PolarGrid,
    cr_tol: f64,
    deriv_tol: f64,
    h: f64,
) -> Result<ConformalityReport> {
    region.validate()?;
    grid.validate()?;
    spec.validate()?;
    let points = region.grid_points(grid);
    let measured: Vec<(ComplexValue, f64, f64)> = points
        .par_iter()
        .map(|&z| -> Result<_> {
            let cr = cauchy_riemann_residual(spec, z, h)?;
            let d = map_derivative(spec, z)?.norm();
            Ok((z, cr, d))
        })
        .collect::<Result<_>>()?;

    let mut report = ConformalityReport {
        grid_points_checked: measured.len(),
        cr_max_residual: 0.0,
        derivative_min_modulus: f64::INFINITY,
        violation_points: Vec::new(),
    };
    for (z, cr, d) in measured {
        report.cr_max_residual = report.cr_max_residual.max(cr);
        report.derivative_min_modulus = report.derivative_min_modulus.min(d);
        let entry = |kind| Violation { z, kind, cr_residual: cr, deriv_modulus: d };
        if cr > cr_tol {
            report.violation_points.push(entry(ViolationKind::CrViolation));
        }
        if d < deriv_tol {
            report.violation_points.push(entry(ViolationKind::DerivativeNearZero));
        }
    }
    Ok(report)
}
