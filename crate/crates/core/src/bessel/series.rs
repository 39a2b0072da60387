use std::f64::consts::PI;

use super::{BesselRegime, BesselResult, Method, EULER_GAMMA};
use crate::tolerances::TOL;
use crate::{ComplexValue, Result};

/// Ascending power series:
///
/// `Jₙ(z) = Σₖ (−z²/4)ᵏ (z/2)ⁿ / (k!(n+k)!)`
///
/// and the integer-order `Yₙ` series with `log(z/2)` and digamma terms.
/// Exact at small `|z|`; loses accuracy to cancellation like `e^{|Re z|}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowerSeries;

impl PowerSeries {
    pub const NAME: &'static str = "series";
}

impl BesselRegime for PowerSeries {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn applicable(&self, _n: u32, z: ComplexValue) -> bool {
        z.norm() <= TOL.series_applicable_max
    }

    fn j(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        let s = j_series(n, z);
        Ok(BesselResult { value: s.sum, method: Method::Series, est_abs_error: s.error_estimate() })
    }

    fn y(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        Ok(y_series(n, z))
    }
}

pub(crate) struct SeriesSum {
    pub sum: ComplexValue,
    pub last_term: f64,
    pub abs_sum: f64,
}

impl SeriesSum {
    pub fn error_estimate(&self) -> f64 {
        self.last_term + 2.0 * f64::EPSILON * self.abs_sum
    }
}

/// `(z/2)ⁿ / n!` built as a running product so large `n` cannot overflow
/// an intermediate factorial.
fn leading_term(n: u32, z: ComplexValue) -> ComplexValue {
    let half = z * 0.5;
    (1..=n).fold(ComplexValue::new(1.0, 0.0), |acc, k| acc * half / f64::from(k))
}

pub(crate) fn j_series(n: u32, z: ComplexValue) -> SeriesSum {
    if z.re == 0.0 && z.im == 0.0 {
        let v = if n == 0 { 1.0 } else { 0.0 };
        return SeriesSum { sum: ComplexValue::new(v, 0.0), last_term: 0.0, abs_sum: v };
    }
    let q = -(z * z) * 0.25;
    let nf = f64::from(n);
    let mut term = leading_term(n, z);
    let mut sum = term;
    let mut abs_sum = term.norm();
    let mut last_term = term.norm();
    for k in 1..TOL.series_max_terms {
        let kf = k as f64;
        term = term * q / (kf * (nf + kf));
        sum += term;
        last_term = term.norm();
        abs_sum += last_term;
        if last_term < TOL.series_rel_stop * sum.norm() || last_term == 0.0 {
            break;
        }
    }
    SeriesSum { sum, last_term, abs_sum }
}

/// `Yₙ(z) = −(1/π)(z/2)⁻ⁿ Σ_{k<n} (n−k−1)!/k! (z²/4)ᵏ + (2/π) log(z/2) Jₙ(z)
///          −(1/π)(z/2)ⁿ Σₖ [ψ(k+1) + ψ(n+k+1)] (−z²/4)ᵏ / (k!(n+k)!)`
fn y_series(n: u32, z: ComplexValue) -> BesselResult {
    let nf = f64::from(n);
    let half = z * 0.5;
    let log_half = half.ln();

    // Finite sum, singular part.
    let mut finite = ComplexValue::new(0.0, 0.0);
    let mut finite_abs = 0.0;
    if n > 0 {
        let mut u = (1..n).fold(ComplexValue::new(1.0, 0.0), |acc, k| acc * f64::from(k));
        u *= half.inv().powu(n);
        let q = z * z * 0.25;
        for k in 0..n {
            finite += u;
            finite_abs += u.norm();
            if k + 1 < n {
                u = u * q / (f64::from(k + 1) * f64::from(n - k - 1));
            }
        }
    }

    // J_n and the digamma-weighted series share the same power terms.
    let q = -(z * z) * 0.25;
    let mut term = leading_term(n, z);
    let mut harmonic_k = 0.0;
    let mut harmonic_nk: f64 = (1..=n).map(|k| 1.0 / f64::from(k)).sum();
    let psi_sum = |hk: f64, hnk: f64| hk + hnk - 2.0 * EULER_GAMMA;
    let mut j_sum = term;
    let mut j_abs = term.norm();
    let mut psi_acc = term * psi_sum(harmonic_k, harmonic_nk);
    let mut psi_abs = psi_acc.norm();
    let mut last = psi_abs;
    for k in 1..TOL.series_max_terms {
        let kf = k as f64;
        term = term * q / (kf * (nf + kf));
        harmonic_k += 1.0 / kf;
        harmonic_nk += 1.0 / (nf + kf);
        j_sum += term;
        j_abs += term.norm();
        let t = term * psi_sum(harmonic_k, harmonic_nk);
        psi_acc += t;
        last = t.norm();
        psi_abs += last;
        if (last < TOL.series_rel_stop * psi_acc.norm() && term.norm() < TOL.series_rel_stop * j_sum.norm())
            || last == 0.0
        {
            break;
        }
    }

    let value = (-finite + log_half * j_sum * 2.0 - psi_acc) / PI;
    let est = (last + 2.0 * f64::EPSILON * (finite_abs + psi_abs + 2.0 * log_half.norm() * j_abs)) / PI
        + 2.0 * f64::EPSILON * value.norm();
    BesselResult { value, method: Method::Series, est_abs_error: est }
}
