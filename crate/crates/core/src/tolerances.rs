//! Numeric thresholds shared by the library and its test suites.

/// Every tolerance, regime boundary and iteration cap used by the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest supported Bessel order.
    pub max_order: u32,
    /// Largest supported `|z|`.
    pub max_modulus: f64,

    /// `auto` uses the power series for `|z|` up to this radius.
    pub series_regime_max: f64,
    /// `auto` uses the Hankel expansion from `max(this, n²/2)` outwards.
    pub asymptotic_regime_min: f64,
    /// The series keeps ~1e-9 relative accuracy (against the `e^{|Im z|}`
    /// envelope) up to this radius.
    pub series_applicable_max: f64,
    /// The Hankel expansion reaches working precision from `max(this, n²/2)`.
    pub asymptotic_applicable_min: f64,
    /// Upper radius for the Miller recurrence (cost grows linearly with `|z|`).
    pub recurrence_applicable_max: f64,

    /// Relative size of the last series term at which summation stops.
    pub series_rel_stop: f64,
    pub series_max_terms: usize,
    /// Relative size of an asymptotic term at which summation stops.
    pub asymptotic_rel_stop: f64,
    pub asymptotic_max_terms: usize,

    /// Anchor radius of the ODE oracle.
    pub oracle_anchor_radius: f64,
    /// Largest step accepted by the ODE oracle.
    pub oracle_max_step: f64,

    /// Default central-difference step for Cauchy–Riemann residuals.
    pub cr_step: f64,
    /// Default `|w′|` threshold below which a point counts as non-conformal.
    pub deriv_tol: f64,
    /// Default half-width of the excluded sector around the negative real axis.
    pub cut_margin: f64,
    /// Newton stops once `|w′|` falls below this.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Newton gives up once `|z|` exceeds this multiple of the outer radius.
    pub newton_escape_factor: f64,
    /// Roots closer than this are merged.
    pub root_dedup: f64,

    /// Sweep errors below `this · R` are excluded from the order fit.
    pub error_floor_rel: f64,
    /// Relative determinant threshold for the 2×2 calibration system.
    pub normal_eq_rel_det: f64,
}

pub const TOL: Tolerances = Tolerances {
    max_order: 50,
    max_modulus: 1e4,

    series_regime_max: 12.0,
    asymptotic_regime_min: 30.0,
    series_applicable_max: 17.0,
    asymptotic_applicable_min: 16.0,
    recurrence_applicable_max: 2000.0,

    series_rel_stop: 1e-17,
    series_max_terms: 300,
    asymptotic_rel_stop: 1e-17,
    asymptotic_max_terms: 200,

    oracle_anchor_radius: 0.5,
    oracle_max_step: 1e-3,

    cr_step: 1e-4,
    deriv_tol: 1e-8,
    cut_margin: 0.05,
    newton_tol: 1e-12,
    newton_max_iter: 50,
    newton_escape_factor: 2.0,
    root_dedup: 1e-6,

    error_floor_rel: 1e-13,
    normal_eq_rel_det: 1e-13,
};
