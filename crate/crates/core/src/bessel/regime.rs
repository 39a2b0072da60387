use std::sync::OnceLock;

use super::{BesselResult, HankelAsymptotic, MillerRecurrence, PowerSeries};
use crate::tolerances::TOL;
use crate::{ComplexValue, Result};

/// One evaluation strategy for `Jₙ` and `Yₙ`.
///
/// Implementations assume their inputs already passed the public domain
/// checks (finite `z`, `Yₙ` off the cut), but accept orders up to
/// `max_order + 1` so that derivatives can be formed.
pub trait BesselRegime: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    /// Whether this regime reaches working precision at `(n, z)`.
    fn applicable(&self, n: u32, z: ComplexValue) -> bool;

    fn j(&self, n: u32, z: ComplexValue) -> Result<BesselResult>;

    fn y(&self, n: u32, z: ComplexValue) -> Result<BesselResult>;
}

/// Named collection of regimes. Lookup is by [`BesselRegime::name`].
pub struct RegimeRegistry {
    regimes: Vec<Box<dyn BesselRegime>>,
}

impl RegimeRegistry {
    pub fn empty() -> Self {
        Self { regimes: Vec::new() }
    }

    /// Series, Hankel asymptotic and Miller recurrence.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(PowerSeries));
        reg.register(Box::new(HankelAsymptotic));
        reg.register(Box::new(MillerRecurrence));
        reg
    }

    /// Adds a regime, replacing any previous one with the same name.
    pub fn register(&mut self, regime: Box<dyn BesselRegime>) {
        self.regimes.retain(|r| r.name() != regime.name());
        self.regimes.push(regime);
    }

    pub fn get(&self, name: &str) -> Option<&dyn BesselRegime> {
        self.regimes.iter().find(|r| r.name() == name).map(|r| r.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.regimes.iter().map(|r| r.name()).collect()
    }

    /// Every registered regime that claims working precision at `(n, z)`.
    pub fn applicable(&self, n: u32, z: ComplexValue) -> Vec<&dyn BesselRegime> {
        self.regimes.iter().filter(|r| r.applicable(n, z)).map(|r| r.as_ref()).collect()
    }

    /// Fixed selection by radius: series, then recurrence, then asymptotic.
    pub fn auto(&self, n: u32, z: ComplexValue) -> &dyn BesselRegime {
        let r = z.norm();
        let asym_from = TOL.asymptotic_regime_min.max(0.5 * f64::from(n * n));
        let name = if r <= TOL.series_regime_max {
            PowerSeries::NAME
        } else if r >= asym_from {
            HankelAsymptotic::NAME
        } else {
            MillerRecurrence::NAME
        };
        self.get(name).expect("builtin regime missing from registry")
    }

    /// As [`auto`](Self::auto), but falls back to the series where forward
    /// recurrence for `Yₙ` is not applicable (`n > |z|` below the Hankel
    /// start).
    pub fn auto_y(&self, n: u32, z: ComplexValue) -> &dyn BesselRegime {
        let regime = self.auto(n, z);
        if regime.name() == MillerRecurrence::NAME && !regime.applicable(n, z) {
            return self.get(PowerSeries::NAME).expect("builtin regime missing from registry");
        }
        regime
    }
}

impl Default for RegimeRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// The process-wide builtin registry.
pub fn registry() -> &'static RegimeRegistry {
    static REGISTRY: OnceLock<RegimeRegistry> = OnceLock::new();
    REGISTRY.get_or_init(RegimeRegistry::builtin)
}
