use std::f64::consts::PI;

use super::asymptotic::hankel_recessive;
use super::{check_y_domain, BesselRegime, BesselResult, Method, EULER_GAMMA};
use crate::tolerances::TOL;
use crate::{ComplexValue, Error, Result};

/// Miller's algorithm: `Jₖ` by backward recurrence from a high start index,
/// normalised with the generating-function identity
///
/// `e^{∓iz} = J₀(z) + 2 Σₖ (∓i)ᵏ Jₖ(z)` (upper sign for `Im z ≥ 0`),
///
/// which has no cancellation on the imaginary axis. `Y₀`, `Y₁` follow from
/// the Neumann series in even and odd `Jₖ`, and higher `Yₙ` by forward
/// recurrence.
#[derive(Debug, Clone, Copy, Default)]
pub struct MillerRecurrence;

impl MillerRecurrence {
    pub const NAME: &'static str = "recurrence";
}

/// `log10` of the magnitude of `Jₙ(x)` for `n ≫ x`. The constants are the
/// usual rough fit, not `2π` and `e/2`.
#[allow(clippy::approx_constant)]
fn envj(n: f64, x: f64) -> f64 {
    0.5 * (6.28 * n).log10() - n * (1.36 * x / n).log10()
}

/// Secant search for the order where `envj` reaches `target`.
fn solve_envj(x: f64, mut n0: f64, target: f64) -> f64 {
    let mut f0 = envj(n0, x) - target;
    let mut n1 = n0 + 5.0;
    let mut f1 = envj(n1, x) - target;
    let mut nn = n1;
    for _ in 0..20 {
        nn = (n1 - (n1 - n0) / (1.0 - f0 / f1)).round();
        if nn < 1.0 {
            nn = 1.0;
        }
        let f = envj(nn, x) - target;
        if (nn - n1).abs() < 1.0 {
            break;
        }
        n0 = n1;
        f0 = f1;
        n1 = nn;
        f1 = f;
    }
    nn
}

/// Start index giving every `Jₖ`, `k ≤ n`, about `digits` significant digits.
fn start_index(x: f64, n: u32, digits: f64) -> usize {
    let x = x.max(1e-3);
    let nf = f64::from(n.max(1));
    let half = 0.5 * digits;
    let ejn = envj(nf, x);
    let (target, n0) = if ejn <= half { (digits, (1.1 * x).floor() + 1.0) } else { (half + ejn, nf) };
    let m = solve_envj(x, n0, target) + 10.0;
    // Extra margin: complex arguments decay more slowly in k than real ones.
    (m.max(f64::from(n) + 20.0) as usize) + 20
}

pub(crate) struct MillerOut {
    /// `J₀ … J_{nmax}`.
    pub j: Vec<ComplexValue>,
    pub j_rel_err: f64,
    pub y0: ComplexValue,
    pub y1: ComplexValue,
    pub y_abs_err: f64,
}

const RESCALE_ABOVE: f64 = 1e200;
const RESCALE_BY: f64 = 1e-200;

pub(crate) fn miller(nmax: u32, z: ComplexValue) -> Result<MillerOut> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let m = start_index(z.norm(), nmax.max(1), 17.0);
    let two_over_z = z.inv() * 2.0;
    let upper = z.im >= 0.0;
    // (∓i)^k cycles through 1, ∓i, −1, ±i.
    let unit_pow = |k: usize| -> ComplexValue {
        let s = if upper { -1.0 } else { 1.0 };
        match k % 4 {
            0 => ComplexValue::new(1.0, 0.0),
            1 => ComplexValue::new(0.0, s),
            2 => ComplexValue::new(-1.0, 0.0),
            _ => ComplexValue::new(0.0, -s),
        }
    };

    let keep = nmax.max(1) as usize;
    let mut stored = vec![ComplexValue::new(0.0, 0.0); keep + 1];
    // Rescalings applied before each entry was stored; entries are never
    // rescaled afterwards, so tiny high orders do not underflow early.
    let mut stored_at = vec![0u32; keep + 1];
    let mut rescales = 0u32;
    let mut f_next = ComplexValue::new(0.0, 0.0); // f_{k+1}
    let mut f_cur = ComplexValue::new(1e-30, 0.0); // f_k, k = m
    let mut norm = ComplexValue::new(0.0, 0.0);
    let mut norm_abs = 0.0;
    // Σ (−1)^k f_{2k}/k and Σ (−1)^k (2k+1)/(k(k+1)) f_{2k+1}, k ≥ 1.
    let mut even_sum = ComplexValue::new(0.0, 0.0);
    let mut odd_sum = ComplexValue::new(0.0, 0.0);
    let mut neumann_abs = 0.0;

    let mut k = m;
    loop {
        if k <= keep {
            stored[k] = f_cur;
            stored_at[k] = rescales;
        }
        let weight = if k == 0 { ComplexValue::new(1.0, 0.0) } else { unit_pow(k) * 2.0 };
        let t = weight * f_cur;
        norm += t;
        norm_abs += t.norm();
        if k >= 2 && k.is_multiple_of(2) {
            let h = (k / 2) as f64;
            let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            let t = f_cur * (sign / h);
            even_sum += t;
            neumann_abs += t.norm();
        } else if k >= 3 && k % 2 == 1 {
            let h = ((k - 1) / 2) as f64;
            let sign = if ((k - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            let t = f_cur * (sign * (2.0 * h + 1.0) / (h * (h + 1.0)));
            odd_sum += t;
            neumann_abs += t.norm();
        }
        if k == 0 {
            break;
        }
        let f_prev = two_over_z * (k as f64) * f_cur - f_next;
        f_next = f_cur;
        f_cur = f_prev;
        k -= 1;
        if f_cur.norm() > RESCALE_ABOVE {
            f_cur *= RESCALE_BY;
            f_next *= RESCALE_BY;
            norm *= RESCALE_BY;
            norm_abs *= RESCALE_BY;
            even_sum *= RESCALE_BY;
            odd_sum *= RESCALE_BY;
            neumann_abs *= RESCALE_BY;
            rescales += 1;
        }
    }

    let target = if upper { (ComplexValue::new(0.0, -1.0) * z).exp() } else { (ComplexValue::new(0.0, 1.0) * z).exp() };
    // `Complex::div` squares |norm|, which overflows long before |norm| does.
    let norm_mod = norm.norm();
    let scale = target * (norm.conj() / norm_mod) / norm_mod;
    if !(scale.re.is_finite() && scale.im.is_finite()) {
        return Err(Error::Overflow);
    }
    let j: Vec<ComplexValue> = stored
        .iter()
        .zip(&stored_at)
        .take(keep + 1)
        .map(|(f, &at)| (0..rescales - at).fold(f * scale, |v, _| v * RESCALE_BY))
        .collect();
    let cancel = norm_abs / norm_mod;
    let j_rel_err = f64::EPSILON * (m as f64 + 4.0 * cancel);

    let (j0, j1) = (j[0], j[1]);
    let lg = (z * 0.5).ln() + EULER_GAMMA;
    let y0 = (lg * j0 - even_sum * scale * 2.0) * (2.0 / PI);
    let y1 = ((lg - 1.0) * j1 - j0 / z - odd_sum * scale) * (2.0 / PI);
    let y_abs_err = (2.0 / PI)
        * (lg.norm() * (j0.norm() + j1.norm()) * j_rel_err
            + 4.0 * f64::EPSILON * neumann_abs * scale.norm()
            + j0.norm() * j_rel_err / z.norm());
    Ok(MillerOut { j, j_rel_err, y0, y1, y_abs_err })
}

impl BesselRegime for MillerRecurrence {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn applicable(&self, n: u32, z: ComplexValue) -> bool {
        let r = z.norm();
        r > 0.0 && r <= TOL.recurrence_applicable_max && (r >= TOL.asymptotic_applicable_min || f64::from(n) <= r)
    }

    fn j(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        if z.re == 0.0 && z.im == 0.0 {
            let v = if n == 0 { 1.0 } else { 0.0 };
            return Ok(BesselResult {
                value: ComplexValue::new(v, 0.0),
                method: Method::BackwardRecurrence,
                est_abs_error: 0.0,
            });
        }
        let out = miller(n, z)?;
        let value = out.j[n as usize];
        Ok(BesselResult {
            value,
            method: Method::BackwardRecurrence,
            est_abs_error: value.norm() * out.j_rel_err + f64::MIN_POSITIVE,
        })
    }

    fn y(&self, n: u32, z: ComplexValue) -> Result<BesselResult> {
        check_y_domain(z)?;
        if n == 0 {
            let out = miller(1, z)?;
            return Ok(BesselResult {
                value: out.y0,
                method: Method::BackwardRecurrence,
                est_abs_error: out.y_abs_err,
            });
        }
        let out = miller(n, z)?;
        let jn = out.j[n as usize];
        let (value, est_abs_error) = if z.norm() >= TOL.asymptotic_applicable_min {
            y_via_hankel(n, z, jn, out.j_rel_err)
        } else {
            y_forward(n, z, &out)
        };
        let method = if n == 1 { Method::BackwardRecurrence } else { Method::ForwardRecurrence };
        Ok(BesselResult { value, method, est_abs_error })
    }
}

fn forward(n: u32, z: ComplexValue, f0: ComplexValue, f1: ComplexValue) -> ComplexValue {
    let two_over_z = z.inv() * 2.0;
    let (mut prev, mut cur) = (f0, f1);
    for k in 1..n {
        let next = two_over_z * f64::from(k) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Yₙ` by forward recurrence from the Neumann-series `Y₀`, `Y₁`.
///
/// An error `δ` in the starting pair splits into multiples of `Jₙ` and of
/// the Hankel function, with weights bounded through the Casoratian
/// `2/(πz)`. When `|Im z|` is large the Hankel part starts out
/// `e^{−2|Im z|}` smaller than `Y₀` but dominates at high order, and the
/// estimate grows accordingly.
fn y_forward(n: u32, z: ComplexValue, out: &MillerOut) -> (ComplexValue, f64) {
    let yn = forward(n, z, out.y0, out.y1);
    let jn = out.j[n as usize];
    let (j0, j1) = (out.j[0].norm(), out.j[1].norm());
    let h_n = jn.norm() + yn.norm();
    let h_01 = j0 + j1 + out.y0.norm() + out.y1.norm();
    let cas = 0.5 * PI * z.norm();
    let est = out.y_abs_err * cas * ((j0 + j1) * h_n + h_01 * jn.norm()) + yn.norm() * f64::EPSILON * f64::from(n + 1);
    (yn, est)
}

/// `Yₙ = ±i(Jₙ − Hₙ)` with `Hₙ` the Hankel function recessive in the
/// half-plane of `z`, started from its asymptotic expansion. Forward
/// recurrence is stable for `Hₙ`, and the subtraction is benign because
/// `Jₙ` and `Hₙ` dominate at opposite ends of the order range.
fn y_via_hankel(n: u32, z: ComplexValue, jn: ComplexValue, j_rel_err: f64) -> (ComplexValue, f64) {
    let (h0, e0) = hankel_recessive(0, z);
    let (h1, e1) = hankel_recessive(1, z);
    let hn = forward(n, z, h0, h1);
    let i = ComplexValue::new(0.0, if z.im >= 0.0 { 1.0 } else { -1.0 });
    let yn = i * (jn - hn);
    let est =
        jn.norm() * j_rel_err + hn.norm() * (e0.max(e1) + f64::EPSILON * f64::from(n + 2)) + yn.norm() * f64::EPSILON;
    (yn, est)
}
