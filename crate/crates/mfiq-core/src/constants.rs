//! Physical constants and the numerical guard thresholds used throughout.

use crate::error::{Error, Result};

/// Relative density floor: formulas that divide by a density substitute
/// `max(rho, DENSITY_FLOOR_REL * max(rho))`. Densities vanish at nodes and
/// in the tails, where `1/rho` terms would otherwise overflow.
pub const DENSITY_FLOOR_REL: f64 = 1e-12;

/// Trusted-mask threshold relative to the density floor: a grid point is
/// trusted only where `rho > TRUST_FACTOR * DENSITY_FLOOR_REL * max(rho)`.
pub const TRUST_FACTOR: f64 = 10.0;

/// Local resolution bound for `1/rho`-bearing stencils: a point is dropped
/// from the trusted mask when `h * |rho'| > RESOLUTION_TRUST * rho`, i.e.
/// when the density varies too fast on the grid scale for its log-derivative
/// stencils to mean anything. Within a few cells of a node the relative
/// stencil error of the quantum-potential formula is O((h/delta)^2) with
/// delta the node distance, which the plain density floor does not catch.
pub const RESOLUTION_TRUST: f64 = 0.02;

/// Physical constants for a run. Natural units (`hbar = mass = c = 1`) are
/// the defaults; every formula keeps the constants symbolic so SI-like
/// values work equally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    /// Speed of light; only the Klein-Gordon module uses it.
    pub c: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants { hbar: 1.0, mass: 1.0, c: 1.0 }
    }
}

impl PhysicalConstants {
    /// All constants must be strictly positive and finite.
    pub fn new(hbar: f64, mass: f64, c: f64) -> Result<Self> {
        let all_finite = hbar.is_finite() && mass.is_finite() && c.is_finite();
        if !all_finite || hbar <= 0.0 || mass <= 0.0 || c <= 0.0 {
            return Err(Error::InvalidInput(
                "physical constants must be strictly positive and finite",
            ));
        }
        Ok(PhysicalConstants { hbar, mass, c })
    }

    /// Massless constants for the light-cone limit of the Klein-Gordon
    /// equation. Modules that divide by the mass reject these.
    pub fn massless(hbar: f64, c: f64) -> Result<Self> {
        if !hbar.is_finite() || !c.is_finite() || hbar <= 0.0 || c <= 0.0 {
            return Err(Error::InvalidInput("hbar and c must be strictly positive and finite"));
        }
        Ok(PhysicalConstants { hbar, mass: 0.0, c })
    }

    pub(crate) fn require_mass(&self) -> Result<f64> {
        if self.mass > 0.0 {
            Ok(self.mass)
        } else {
            Err(Error::InvalidInput("this operation requires a strictly positive mass"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_natural_units() {
        let c = PhysicalConstants::default();
        assert_eq!((c.hbar, c.mass, c.c), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PhysicalConstants::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn massless_is_kg_only() {
        let c = PhysicalConstants::massless(1.0, 2.0).unwrap();
        assert_eq!(c.mass, 0.0);
        assert!(c.require_mass().is_err());
    }
}
