//! Perturbed circles `r(θ) = R + ε·f(θ)` with a truncated Fourier shape
//! `f(θ) = a₀ + Σₖ (aₖ cos kθ + bₖ sin kθ)`.

use std::f64::consts::PI;

use crate::{ComplexValue, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierMode {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedBoundary {
    pub radius: f64,
    pub epsilon: f64,
    pub a0: f64,
    /// Strictly increasing `k ≥ 1`.
    pub modes: Vec<FourierMode>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub theta: f64,
    pub target: ComplexValue,
}

impl PerturbedBoundary {
    /// Checks the structural invariants. Positivity of `R + ε·f` is not
    /// required here; see [`PerturbedBoundary::ensure_positive`].
    pub fn new(radius: f64, epsilon: f64, a0: f64, modes: Vec<FourierMode>) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidBoundary(format!("radius must be finite and > 0, got {radius}")));
        }
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidBoundary(format!("epsilon must be finite and >= 0, got {epsilon}")));
        }
        if !a0.is_finite() {
            return Err(Error::InvalidBoundary("a0 must be finite".into()));
        }
        let mut prev = 0;
        for m in &modes {
            if m.k <= prev {
                return Err(Error::InvalidBoundary(format!(
                    "mode indices must be >= 1 and strictly increasing, got {} after {}",
                    m.k, prev
                )));
            }
            if !(m.a.is_finite() && m.b.is_finite()) {
                return Err(Error::InvalidBoundary(format!("mode {} has a non-finite coefficient", m.k)));
            }
            prev = m.k;
        }
        Ok(Self { radius, epsilon, a0, modes })
    }

    /// The unperturbed circle of radius `R`.
    pub fn circle(radius: f64) -> Result<Self> {
        Self::new(radius, 0.0, 0.0, Vec::new())
    }

    /// Same shape and radius, different `ε`.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.radius, epsilon, self.a0, self.modes.clone())
    }

    /// `|a₀| + Σ(|aₖ| + |bₖ|) ≥ sup|f|`.
    pub fn sup_bound(&self) -> f64 {
        self.a0.abs() + self.modes.iter().map(|m| m.a.abs() + m.b.abs()).sum::<f64>()
    }

    /// `ε·sup|f| < R`, which keeps the boundary a positive radial graph.
    pub fn ensure_positive(&self) -> Result<()> {
        let bound = self.epsilon * self.sup_bound();
        if bound < self.radius {
            Ok(())
        } else {
            Err(Error::PerturbationTooLarge { bound, radius: self.radius })
        }
    }

    pub fn radius_at(&self, theta: f64) -> f64 {
        self.radius + self.epsilon * f_theta(self, theta)
    }

    /// Largest `|dr/dθ|` allowed by the coefficients: `ε·Σ k(|aₖ| + |bₖ|)`.
    pub fn radial_lipschitz(&self) -> f64 {
        self.epsilon * self.modes.iter().map(|m| f64::from(m.k) * (m.a.abs() + m.b.abs())).sum::<f64>()
    }
}

/// `f(θ) = a₀ + Σₖ (aₖ cos kθ + bₖ sin kθ)`.
pub fn f_theta(boundary: &PerturbedBoundary, theta: f64) -> f64 {
    boundary.a0
        + boundary
            .modes
            .iter()
            .map(|m| {
                let (s, c) = (f64::from(m.k) * theta).sin_cos();
                m.a * c + m.b * s
            })
            .sum::<f64>()
}

/// `(R + ε·f(θ))·e^{iθ}`.
pub fn boundary_point(boundary: &PerturbedBoundary, theta: f64) -> Result<ComplexValue> {
    let r = boundary.radius_at(theta);
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius { theta });
    }
    Ok(ComplexValue::from_polar(r, theta))
}

/// `M` samples at `θⱼ = 2πj/M`, `j = 0..M−1`.
pub fn sample_boundary(boundary: &PerturbedBoundary, m: usize) -> Result<Vec<BoundarySample>> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 boundary samples, got {m}")));
    }
    (0..m)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / m as f64;
            Ok(BoundarySample { theta, target: boundary_point(boundary, theta)? })
        })
        .collect()
}

/// SplitMix64 (Steele, Lea & Flood): `state += 0x9E3779B97F4A7C15`, then the
/// xor-shift-multiply finaliser with constants `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB`. The seed is the initial state. Uniform doubles use
/// the top 53 bits: `(x >> 11) · 2⁻⁵³ ∈ [0, 1)`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[−h, h)`.
    pub fn symmetric(&mut self, h: f64) -> f64 {
        h * (2.0 * self.next_f64() - 1.0)
    }
}

/// Random shape with `aₖ, bₖ ~ U[−k^{−decay}, k^{−decay}]`, `k = 1..K`, drawn
/// in the order `a₁, b₁, a₂, b₂, …` from [`SplitMix64`] seeded with `seed`;
/// `a₀ = 0`.
///
/// If the worst case `ε·Σ 2k^{−decay} < R` fails, the drawn coefficients are
/// still accepted when their own bound `ε·Σ(|aₖ| + |bₖ|) < R` holds;
/// otherwise the call fails with `PerturbationTooLarge`.
pub fn random_boundary(seed: u64, radius: f64, epsilon: f64, k_max: u32, decay: f64) -> Result<PerturbedBoundary> {
    if k_max < 1 {
        return Err(Error::InvalidBoundary("need at least one Fourier mode".into()));
    }
    if !(decay.is_finite() && decay > 0.0) {
        return Err(Error::InvalidBoundary(format!("decay must be finite and > 0, got {decay}")));
    }
    let mut rng = SplitMix64::new(seed);
    let modes = (1..=k_max)
        .map(|k| {
            let h = f64::from(k).powf(-decay);
            let a = rng.symmetric(h);
            let b = rng.symmetric(h);
            FourierMode { k, a, b }
        })
        .collect();
    let boundary = PerturbedBoundary::new(radius, epsilon, 0.0, modes)?;
    let worst = epsilon * (1..=k_max).map(|k| 2.0 * f64::from(k).powf(-decay)).sum::<f64>();
    if worst < radius {
        return Ok(boundary);
    }
    boundary.ensure_positive()?;
    Ok(boundary)
}
