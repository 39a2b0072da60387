use rayon::prelude::*;

use super::{map_jet, Annulus, MappingSpec, PolarGrid};
use crate::tolerances::TOL;
use crate::{ComplexValue, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeZeros {
    /// Distinct roots inside the region, sorted by modulus then argument.
    pub roots: Vec<ComplexValue>,
    /// Seeds whose Newton iteration failed, escaped or hit a singularity.
    pub non_convergent: usize,
}

/// Newton iteration on `w′` from every point of the seed grid.
pub fn find_derivative_zeros(spec: &MappingSpec, region: &Annulus, seeds: PolarGrid) -> Result<DerivativeZeros> {
    region.validate()?;
    seeds.validate()?;
    spec.validate()?;
    let escape = TOL.newton_escape_factor * region.r_max;
    let outcomes: Vec<Option<ComplexValue>> =
        region.grid_points(seeds).par_iter().map(|&z0| newton(spec, z0, escape)).collect();

    let non_convergent = outcomes.iter().filter(|o| o.is_none()).count();
    let mut found: Vec<ComplexValue> = outcomes.into_iter().flatten().filter(|z| region.contains(*z)).collect();
    found.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
    let mut roots: Vec<ComplexValue> = Vec::new();
    for z in found {
        if roots.iter().all(|r| (r - z).norm() > TOL.root_dedup) {
            roots.push(z);
        }
    }
    Ok(DerivativeZeros { roots, non_convergent })
}

fn newton(spec: &MappingSpec, mut z: ComplexValue, escape: f64) -> Option<ComplexValue> {
    for _ in 0..=TOL.newton_max_iter {
        let (_, wp, wpp) = map_jet(spec, z).ok()?;
        if wp.norm() <= TOL.newton_tol {
            return Some(z);
        }
        let dz = wp / wpp;
        if !(dz.re.is_finite() && dz.im.is_finite()) {
            return None;
        }
        z -= dz;
        if z.norm() > escape {
            return None;
        }
    }
    None
}
