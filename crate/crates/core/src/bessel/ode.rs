//! Independent oracle: integrate `z²w″ + zw′ + (z² − n²)w = 0` along a ray.
//!
//! The state `(w, w′)` starts at `z₀ = 0.5·e^{i·arg z}` from power-series
//! values and is advanced to the target with fixed-step classical RK4 in the
//! ray parameter. The anchor series below is deliberately self-contained;
//! nothing here calls the evaluation regimes it is used to check.

use std::f64::consts::PI;

use super::{check_y_domain, EULER_GAMMA};
use crate::tolerances::TOL;
use crate::{ensure_finite, ComplexValue, Error, Result};

/// Which solution the anchor values select.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeAnchor {
    /// `(Jₙ, Jₙ′)`.
    FirstKind,
    /// `(Yₙ, Yₙ′)`.
    SecondKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSample {
    pub z: ComplexValue,
    pub w: ComplexValue,
    pub w_prime: ComplexValue,
}

/// Samples along the integration ray, anchor first and target last.
/// Consecutive samples are exactly `step` apart; `step` is the requested
/// step shrunk so that a whole number of steps lands on the target.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution {
    pub samples: Vec<OdeSample>,
    pub order_n: u32,
    pub step: f64,
}

impl OdeSolution {
    pub fn last(&self) -> OdeSample {
        *self.samples.last().expect("an ODE solution always holds its anchor")
    }
}

/// `Jₙ` along the ray to `z_target`.
pub fn ode_oracle(n: u32, z_target: ComplexValue, step: f64) -> Result<OdeSolution> {
    ode_oracle_with(n, z_target, step, OdeAnchor::FirstKind)
}

pub fn ode_oracle_with(n: u32, z_target: ComplexValue, step: f64, anchor: OdeAnchor) -> Result<OdeSolution> {
    let mut samples = Vec::new();
    let h = integrate(n, z_target, step, anchor, |s| samples.push(s))?;
    Ok(OdeSolution { samples, order_n: n, step: h })
}

/// Only the final sample, without storing the path.
pub fn ode_endpoint(n: u32, z_target: ComplexValue, step: f64, anchor: OdeAnchor) -> Result<OdeSample> {
    let mut last = None;
    integrate(n, z_target, step, anchor, |s| last = Some(s))?;
    Ok(last.expect("integration records at least the anchor"))
}

fn integrate(
    n: u32,
    target: ComplexValue,
    step: f64,
    anchor: OdeAnchor,
    mut record: impl FnMut(OdeSample),
) -> Result<f64> {
    ensure_finite(target)?;
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("ODE step must be positive, got {step}")));
    }
    if step > TOL.oracle_max_step {
        return Err(Error::StepTooLarge { step, max: TOL.oracle_max_step });
    }
    let r = target.norm();
    if r == 0.0 {
        return Err(Error::ZeroArgument);
    }
    if target.im == 0.0 && target.re < 0.0 {
        return Err(Error::BranchCut(target));
    }
    if anchor == OdeAnchor::SecondKind {
        check_y_domain(target)?;
    }

    let dir = target / r;
    let r0 = TOL.oracle_anchor_radius;
    let z0 = dir * r0;
    let (mut w, mut wp) = match anchor {
        OdeAnchor::FirstKind => anchor_j(n, z0),
        OdeAnchor::SecondKind => anchor_y(n, z0),
    };

    let length = r - r0;
    let steps = (length.abs() / step).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { length / steps as f64 };
    let n2 = f64::from(n) * f64::from(n);
    let dz = dir * h;
    // d/dt (w, w′) = dir · (w′, w″), w″ = −w′/z − (1 − n²/z²)w.
    let rhs = |z: ComplexValue, w: ComplexValue, wp: ComplexValue| {
        let zi = z.inv();
        let wpp = -wp * zi - (1.0 - n2 * zi * zi) * w;
        (wp, wpp)
    };

    record(OdeSample { z: z0, w, w_prime: wp });
    for i in 0..steps {
        let z = dir * (r0 + h * i as f64);
        let zm = dir * (r0 + h * (i as f64 + 0.5));
        let z1 = dir * (r0 + h * (i + 1) as f64);
        let (k1w, k1p) = rhs(z, w, wp);
        let (k2w, k2p) = rhs(zm, w + k1w * dz * 0.5, wp + k1p * dz * 0.5);
        let (k3w, k3p) = rhs(zm, w + k2w * dz * 0.5, wp + k2p * dz * 0.5);
        let (k4w, k4p) = rhs(z1, w + k3w * dz, wp + k3p * dz);
        w += (k1w + k2w * 2.0 + k3w * 2.0 + k4w) * dz / 6.0;
        wp += (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * dz / 6.0;
        record(OdeSample { z: z1, w, w_prime: wp });
    }
    Ok(h.abs())
}

const ANCHOR_TERMS: usize = 40;

/// `Jₙ(z)` and `Jₙ′(z)` by the ascending series, differentiated termwise.
fn anchor_j(n: u32, z: ComplexValue) -> (ComplexValue, ComplexValue) {
    let nf = f64::from(n);
    let mut factorial = 1.0;
    for k in 1..=n {
        factorial *= f64::from(k);
    }
    let half = z * 0.5;
    let q = -half * half;
    let mut term = half.powu(n) / factorial;
    let mut w = ComplexValue::new(0.0, 0.0);
    let mut wp = ComplexValue::new(0.0, 0.0);
    for k in 0..ANCHOR_TERMS {
        let kf = k as f64;
        w += term;
        wp += term * (2.0 * kf + nf) / z;
        term = term * q / ((kf + 1.0) * (nf + kf + 1.0));
    }
    (w, wp)
}

/// `Yₙ(z)` and `Yₙ′(z)` from the integer-order log series.
fn anchor_y(n: u32, z: ComplexValue) -> (ComplexValue, ComplexValue) {
    let nf = f64::from(n);
    let (jn, jnp) = anchor_j(n, z);
    let half = z * 0.5;
    let lg = half.ln();

    // −(1/π) Σ_{k<n} (n−k−1)!/k! (z/2)^{2k−n}
    let mut sing = ComplexValue::new(0.0, 0.0);
    let mut sing_p = ComplexValue::new(0.0, 0.0);
    for k in 0..n {
        let mut coef = 1.0;
        for i in 1..n - k {
            coef *= f64::from(i);
        }
        for i in 1..=k {
            coef /= f64::from(i);
        }
        let e = 2 * i64::from(k) - i64::from(n);
        let t = half.powi(e as i32) * coef;
        sing += t;
        sing_p += t * (e as f64) / z;
    }

    // −(1/π) Σ_k [ψ(k+1) + ψ(n+k+1)] (−z²/4)^k (z/2)^n / (k!(n+k)!)
    let mut factorial = 1.0;
    for k in 1..=n {
        factorial *= f64::from(k);
    }
    let q = -half * half;
    let mut term = half.powu(n) / factorial;
    let psi = |m: u32| -> f64 { -EULER_GAMMA + (1..=m).map(|i| 1.0 / f64::from(i)).sum::<f64>() };
    let mut reg = ComplexValue::new(0.0, 0.0);
    let mut reg_p = ComplexValue::new(0.0, 0.0);
    for k in 0..ANCHOR_TERMS as u32 {
        let kf = f64::from(k);
        let t = term * (psi(k) + psi(n + k));
        reg += t;
        reg_p += t * (2.0 * kf + nf) / z;
        term = term * q / ((kf + 1.0) * (nf + kf + 1.0));
    }

    let w = (-sing + lg * jn * 2.0 - reg) / PI;
    let wp = (-sing_p + (jn / z + lg * jnp) * 2.0 - reg_p) / PI;
    (w, wp)
}
