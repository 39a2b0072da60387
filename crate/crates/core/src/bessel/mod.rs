//! Bessel functions `Jₙ(z)` and `Yₙ(z)` of integer order `0 ≤ n ≤ 50` for
//! complex `z`, principal branch with the cut on `(−∞, 0]`.
//!
//! Values come from one of several interchangeable [`BesselRegime`]s held in
//! a [`RegimeRegistry`]. The public entry points pick a regime by argument
//! size:
//!
//! | region                          | regime                          |
//! |---------------------------------|---------------------------------|
//! | `|z| ≤ 12`                      | power series                    |
//! | `12 < |z| < max(30, n²/2)`      | Miller backward recurrence      |
//!
//! with one exception: `Yₙ` for `n > |z|` below `|z| = 16` stays on the
//! series, where forward recurrence would amplify rounding by `e^{2|Im z|}`.
//! | `|z| ≥ max(30, n²/2)`           | Hankel asymptotic expansion     |
//!
//! [`ode`] integrates Bessel's equation directly and serves as an oracle
//! that shares no code with the regimes above.

mod asymptotic;
pub mod ode;
mod recurrence;
mod regime;
mod series;

pub use asymptotic::{asymptotic_j, asymptotic_y, HankelAsymptotic};
pub use ode::{ode_endpoint, ode_oracle, ode_oracle_with, OdeAnchor, OdeSample, OdeSolution};
pub use recurrence::MillerRecurrence;
pub use regime::{registry, BesselRegime, RegimeRegistry};
pub use series::PowerSeries;

use std::f64::consts::PI;

use crate::tolerances::TOL;
use crate::{ensure_finite, ComplexValue, Error, Result};

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Asymptotic,
    ForwardRecurrence,
    BackwardRecurrence,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
            Method::ForwardRecurrence => "forward_recurrence",
            Method::BackwardRecurrence => "backward_recurrence",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A function value together with the regime that produced it and an
/// estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselResult {
    pub value: ComplexValue,
    pub method: Method,
    pub est_abs_error: f64,
}

impl BesselResult {
    pub(crate) fn checked(self) -> Result<Self> {
        if self.value.re.is_finite() && self.value.im.is_finite() && self.est_abs_error.is_finite() {
            Ok(self)
        } else {
            Err(Error::Overflow)
        }
    }
}

/// Which kind of Bessel function an evaluation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    First,
    Second,
}

pub(crate) fn validate_j(n: u32, z: ComplexValue) -> Result<()> {
    ensure_finite(z)?;
    if n > TOL.max_order {
        return Err(Error::OrderTooLarge(n));
    }
    let r = z.norm();
    if r > TOL.max_modulus {
        return Err(Error::MagnitudeTooLarge(r));
    }
    Ok(())
}

pub(crate) fn validate_y(n: u32, z: ComplexValue) -> Result<()> {
    validate_j(n, z)?;
    check_y_domain(z)
}

pub(crate) fn check_y_domain(z: ComplexValue) -> Result<()> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::OriginSingularity);
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut(z));
    }
    Ok(())
}

/// `Jₙ(z)` from the automatically selected regime.
pub fn bessel_j(n: u32, z: ComplexValue) -> Result<BesselResult> {
    validate_j(n, z)?;
    registry().auto(n, z).j(n, z)?.checked()
}

/// `Yₙ(z)` from the automatically selected regime.
pub fn bessel_y(n: u32, z: ComplexValue) -> Result<BesselResult> {
    validate_y(n, z)?;
    registry().auto_y(n, z).y(n, z)?.checked()
}

/// Evaluates with an explicitly chosen regime, bypassing automatic selection.
pub fn eval_with(regime: &dyn BesselRegime, kind: Kind, n: u32, z: ComplexValue) -> Result<BesselResult> {
    match kind {
        Kind::First => {
            validate_j(n, z)?;
            regime.j(n, z)?.checked()
        }
        Kind::Second => {
            validate_y(n, z)?;
            regime.y(n, z)?.checked()
        }
    }
}

// Orders up to n + 1 are needed for derivatives, so these skip the order cap.
fn j_unchecked(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    Ok(registry().auto(n, z).j(n, z)?.checked()?.value)
}

fn y_unchecked(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    Ok(registry().auto_y(n, z).y(n, z)?.checked()?.value)
}

/// `Jₙ′(z)`: `−J₁(z)` for `n = 0`, otherwise `(Jₙ₋₁(z) − Jₙ₊₁(z))/2`.
pub fn bessel_j_prime(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    validate_j(n, z)?;
    if n == 0 {
        Ok(-j_unchecked(1, z)?)
    } else {
        Ok((j_unchecked(n - 1, z)? - j_unchecked(n + 1, z)?) * 0.5)
    }
}

/// `Yₙ′(z)` by the same recurrence as [`bessel_j_prime`].
pub fn bessel_y_prime(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    validate_y(n, z)?;
    if n == 0 {
        Ok(-y_unchecked(1, z)?)
    } else {
        Ok((y_unchecked(n - 1, z)? - y_unchecked(n + 1, z)?) * 0.5)
    }
}

/// `|Jₙ₊₁(z)·Yₙ(z) − Jₙ(z)·Yₙ₊₁(z) − 2/(πz)|`.
pub fn wronskian_residual(n: u32, z: ComplexValue) -> Result<f64> {
    validate_y(n, z)?;
    let jn = j_unchecked(n, z)?;
    let jn1 = j_unchecked(n + 1, z)?;
    let yn = y_unchecked(n, z)?;
    let yn1 = y_unchecked(n + 1, z)?;
    let expected = ComplexValue::new(2.0 / PI, 0.0) / z;
    Ok((jn1 * yn - jn * yn1 - expected).norm())
}

/// Size scale of `Jₙ`/`Yₙ` at `z` for `|z| ≳ n`: `√(2/(π|z|))·e^{|Im z|}`.
pub fn envelope(z: ComplexValue) -> f64 {
    (2.0 / (PI * z.norm())).sqrt() * z.im.abs().exp()
}

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
