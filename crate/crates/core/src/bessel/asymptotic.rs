use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::{check_y_domain, BesselRegime, BesselResult, Method};
use crate::tolerances::TOL;
use crate::{ensure_finite, ComplexValue, Error, Result};

fn phase(n: u32, z: ComplexValue) -> ComplexValue {
    z - f64::from(n) * FRAC_PI_2 - FRAC_PI_4
}

fn prefactor(z: ComplexValue) -> ComplexValue {
    (ComplexValue::new(2.0 / PI, 0.0) / z).sqrt()
}

/// Leading-order large-argument form `√(2/(πz))·cos(z − nπ/2 − π/4)`,
/// principal square root.
pub fn asymptotic_j(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(z)?;
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument);
    }
    Ok(prefactor(z) * phase(n, z).cos())
}

/// Leading-order large-argument form `√(2/(πz))·sin(z − nπ/2 − π/4)`.
pub fn asymptotic_y(n: u32, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(z)?;
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument);
    }
    Ok(prefactor(z) * phase(n, z).sin())
}

/// Full Hankel expansion
///
/// `Jₙ = √(2/(πz))(P cos χ − Q sin χ)`, `Yₙ = √(2/(πz))(P sin χ + Q cos χ)`,
///
/// summed until terms drop below `1e−17` or start growing. Points in the
/// left half-plane are reflected onto `−z` first, since the expansion loses
/// accuracy near `|arg z| = π` at moderate `|z|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HankelAsymptotic;

impl HankelAsymptotic {
    pub const NAME: &'static str = "asymptotic";
}

struct HankelPair {
    j: ComplexValue,
    y: ComplexValue,
    est: f64,
}

struct PqSums {
    p: ComplexValue,
    q: ComplexValue,
    /// Magnitude of the last term kept.
    last: f64,
}

fn pq_sums(n: u32, z: ComplexValue) -> PqSums {
    let mu = 4.0 * f64::from(n) * f64::from(n);
    let zinv = z.inv();
    let mut p = ComplexValue::new(1.0, 0.0);
    let mut q = ComplexValue::new(0.0, 0.0);
    // a_k(n) / z^k with the sign pattern of P and Q folded in.
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut prev_mag = f64::INFINITY;
    let mut last = 0.0;
    for k in 1..TOL.asymptotic_max_terms {
        let odd = (2 * k - 1) as f64;
        let next = term * zinv * ((mu - odd * odd) / (8.0 * k as f64));
        let mag = next.norm();
        if mag > prev_mag {
            // Divergent tail: stop at the smallest term.
            last = prev_mag;
            break;
        }
        prev_mag = mag;
        term = next;
        last = mag;
        // (-1)^{k/2} for even k, (-1)^{(k-1)/2} for odd k.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += term * sign;
        } else {
            q += term * sign;
        }
        if mag < TOL.asymptotic_rel_stop || mag == 0.0 {
            break;
        }
    }
    PqSums { p, q, last }
}

// Phase rounding in cos/sin contributes about eps·|z|.
fn phase_rounding(z: ComplexValue) -> f64 {
    f64::EPSILON * (8.0 + 2.0 * z.norm())
}

/// Right half-plane only.
fn hankel_right(n: u32, z: ComplexValue) -> HankelPair {
    let PqSums { p, q, last } = pq_sums(n, z);
    let chi = phase(n, z);
    let (c, s) = (chi.cos(), chi.sin());
    let pre = prefactor(z);
    let j = pre * (p * c - q * s);
    let y = pre * (p * s + q * c);
    let scale = pre.norm() * (c.norm() + s.norm());
    HankelPair { j, y, est: scale * (last + phase_rounding(z)) }
}

/// The Hankel function that decays away from the real axis:
/// `H⁽¹⁾ₙ = √(2/(πz))·e^{iχ}(P + iQ)` for `Im z ≥ 0`, `H⁽²⁾ₙ` with `−i`
/// below. Valid on the whole closed half-plane. Returns the value and a
/// relative error estimate.
pub(crate) fn hankel_recessive(n: u32, z: ComplexValue) -> (ComplexValue, f64) {
    let PqSums { p, q, last } = pq_sums(n, z);
    let i = ComplexValue::new(0.0, if z.im >= 0.0 { 1.0 } else { -1.0 });
    let v = prefactor(z) * (i * phase(n, z)).exp() * (p + i * q);
    (v, 2.0 * last + phase_rounding(z))
}

fn hankel(n: u32, z: ComplexValue) -> HankelPair {
    if z.re >= 0.0 {
        return hankel_right(n, z);
    }
    // z = (−z)·e^{±iπ}: Jₙ(z) = (−1)ⁿJₙ(−z),
    // Yₙ(z) = (−1)ⁿ[Yₙ(−z) ± 2i·Jₙ(−z)] with + above the cut.
    let r = hankel_right(n, -z);
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let two_i = ComplexValue::new(0.0, if z.im > 0.0 { 2.0 } else { -2.0 });
    HankelPair { j: r.j * parity, y: (r.y + two_i * r.j) * parity, est: 3.0 * r.est }
}

impl BesselRegime for HankelAsymptotic {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn applicable(&self, n: u32, z: ComplexValue) -> bool {
        z.norm() >= TOL.asymptotic_applicable_min.max(0.5 * f64::from(n * n))
    }

    fn j(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        if z.norm() == 0.0 {
            return Err(Error::ZeroArgument);
        }
        let h = hankel(n, z);
        Ok(BesselResult { value: h.j, method: Method::Asymptotic, est_abs_error: h.est })
    }

    fn y(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        check_y_domain(z)?;
        let h = hankel(n, z);
        Ok(BesselResult { value: h.y, method: Method::Asymptotic, est_abs_error: h.est })
    }
}
