//! The mapping `w(z) = A·Jₙ(z) + ε·B·Yₙ(z)` and checks of its conformality.

mod scan;
mod zeros;

pub use scan::{
    conformality_scan, conformality_scan_with_step, Annulus, ConformalityReport, PolarGrid, Violation, ViolationKind,
};
pub use zeros::{find_derivative_zeros, DerivativeZeros};

use crate::bessel::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime};
use crate::tolerances::TOL;
use crate::{ensure_finite, ComplexValue, Error, Result};

/// Coefficients `(A, B)`, order `n` and perturbation magnitude `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingSpec {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub n: u32,
    pub epsilon: f64,
}

impl MappingSpec {
    pub fn new(a: ComplexValue, b: ComplexValue, n: u32, epsilon: f64) -> Result<Self> {
        let spec = Self { a, b, n, epsilon };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.a)?;
        ensure_finite(self.b)?;
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidArgument(format!("epsilon must be finite and >= 0, got {}", self.epsilon)));
        }
        if self.n > TOL.max_order {
            return Err(Error::OrderTooLarge(self.n));
        }
        Ok(())
    }

    /// Whether the `Yₙ` term contributes, i.e. `ε·|B| > 0`.
    pub fn y_active(&self) -> bool {
        self.epsilon * self.b.norm() > 0.0
    }

    /// Scales both coefficients by `c`.
    pub fn scaled(&self, c: ComplexValue) -> Self {
        Self { a: self.a * c, b: self.b * c, ..*self }
    }
}

/// `w(z)`. The `Yₙ` term, and therefore its singularity and branch cut,
/// only enters when `ε·|B| > 0`.
pub fn map_point(spec: &MappingSpec, z: ComplexValue) -> Result<ComplexValue> {
    let mut w = spec.a * bessel_j(spec.n, z)?.value;
    if spec.y_active() {
        w += spec.b * spec.epsilon * bessel_y(spec.n, z)?.value;
    }
    Ok(w)
}

/// `w′(z) = A·Jₙ′(z) + ε·B·Yₙ′(z)`.
pub fn map_derivative(spec: &MappingSpec, z: ComplexValue) -> Result<ComplexValue> {
    let mut d = spec.a * bessel_j_prime(spec.n, z)?;
    if spec.y_active() {
        d += spec.b * spec.epsilon * bessel_y_prime(spec.n, z)?;
    }
    Ok(d)
}

/// `(w, w′, w″)`, with `w″` taken from Bessel's equation since `w` is a
/// combination of two of its solutions.
pub fn map_jet(spec: &MappingSpec, z: ComplexValue) -> Result<(ComplexValue, ComplexValue, ComplexValue)> {
    let w = map_point(spec, z)?;
    let wp = map_derivative(spec, z)?;
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let zi = z.inv();
    let n2 = f64::from(spec.n * spec.n);
    let wpp = -wp * zi - (1.0 - n2 * zi * zi) * w;
    Ok((w, wp, wpp))
}

/// Central-difference Cauchy–Riemann residual `max(|uₓ − v_y|, |u_y + vₓ|)`
/// with `u + iv = w`.
pub fn cauchy_riemann_residual(spec: &MappingSpec, z: ComplexValue, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 0.1) {
        return Err(Error::InvalidArgument(format!("stencil step must lie in (0, 0.1), got {h}")));
    }
    let dx = ComplexValue::new(h, 0.0);
    let dy = ComplexValue::new(0.0, h);
    let ex = (map_point(spec, z + dx)? - map_point(spec, z - dx)?) / (2.0 * h);
    let ey = (map_point(spec, z + dy)? - map_point(spec, z - dy)?) / (2.0 * h);
    let (ux, vx) = (ex.re, ex.im);
    let (uy, vy) = (ey.re, ey.im);
    Ok((ux - vy).abs().max((uy + vx).abs()))
}
