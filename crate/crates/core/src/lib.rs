//! Complex-argument Bessel functions of integer order and the mapping
//! `w(z) = A·Jₙ(z) + ε·B·Yₙ(z)` built from them.
//!
//! The crate is organised bottom-up:
//!
//! - [`bessel`]: `Jₙ`, `Yₙ` and derivatives for complex `z`, evaluated by a
//!   registry of interchangeable regimes (power series, Hankel asymptotics,
//!   Miller backward recurrence) plus an independent ODE-integration oracle.
//! - [`mapping`]: evaluation of `w`, Cauchy–Riemann residuals, conformality
//!   scans over an annulus and Newton search for zeros of `w′`.
//! - [`boundary`]: perturbed circles `R + ε·f(θ)` with Fourier-series shapes.
//! - [`error_analysis`]: boundary error profiles, least-squares calibration of
//!   `(A, B)`, ε-sweeps and log-log order fitting.
//!
//! Every numeric threshold lives in [`tolerances::TOL`].

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod boundary;
pub mod error;
pub mod error_analysis;
pub mod mapping;
pub mod tolerances;

pub use error::{Error, Result};

/// A point in the complex plane.
pub type ComplexValue = num_complex::Complex64;

pub(crate) fn ensure_finite(z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}
