//! DBR mirror relations: photon decay rates and the coherent spot radius.

use crate::error::{Error, Result};
use crate::units::{C, HBAR};
use std::f64::consts::PI;

/// Below this amplitude reflectivity the near-unity expansions are not trusted.
pub const MIN_REFLECTIVITY: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorParams {
    pub r1: f64,
    pub r2: f64,
    /// Effective cavity length, nm.
    pub l_c: f64,
    pub n_c: f64,
    /// Vacuum wavelength, nm.
    pub lambda: f64,
}

impl Default for MirrorParams {
    fn default() -> Self {
        Self { r1: 0.999, r2: 0.999, l_c: 100.0, n_c: 3.5, lambda: 918.0 }
    }
}

impl MirrorParams {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("r1", self.r1), ("r2", self.r2)] {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Invalid(format!("{name} must lie in (0, 1), got {r}")));
            }
            if r < MIN_REFLECTIVITY {
                return Err(Error::Domain(format!(
                    "{name} = {r} is below {MIN_REFLECTIVITY}; the high-reflectivity relations do not apply"
                )));
            }
        }
        if !(self.l_c > 0.0 && self.n_c > 0.0 && self.lambda > 0.0) {
            return Err(Error::Invalid(format!("cavity length, index and wavelength must be positive: {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    /// meV
    pub gamma1: f64,
    pub gamma2: f64,
    /// Photon dwell times per mirror, ps.
    pub tau1: f64,
    pub tau2: f64,
}

/// τᵢ = L_c·n_c/(c·(1 − rᵢ)) and γᵢ = ħ/τᵢ.
pub fn decay_rates(m: &MirrorParams) -> Result<DecayRates> {
    m.validate()?;
    let tau = |r: f64| m.l_c * m.n_c / (C * (1.0 - r));
    let (tau1, tau2) = (tau(m.r1), tau(m.r2));
    Ok(DecayRates { gamma1: HBAR / tau1, gamma2: HBAR / tau2, tau1, tau2 })
}

/// R = √(λ·L_c/(π(1 − r₁r₂))), nm.
pub fn spot_radius(m: &MirrorParams) -> Result<f64> {
    m.validate()?;
    Ok((m.lambda * m.l_c / (PI * (1.0 - m.r1 * m.r2))).sqrt())
}

/// Cavity lengths (nm) that reproduce a target γᵢ and a target R separately.
pub fn implied_lengths(m: &MirrorParams, gamma_target: f64, radius_target: f64) -> Result<(f64, f64)> {
    m.validate()?;
    if !(gamma_target > 0.0 && radius_target > 0.0) {
        return Err(Error::Invalid("targets must be positive".into()));
    }
    let from_gamma = HBAR / gamma_target * C * (1.0 - m.r1) / m.n_c;
    let from_radius = radius_target * radius_target * PI * (1.0 - m.r1 * m.r2) / m.lambda;
    Ok((from_gamma, from_radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mirrors_land_near_half_mev_and_few_microns() {
        let m = MirrorParams::default();
        let g = decay_rates(&m).unwrap();
        assert!((g.gamma1 / 0.5 - 1.0).abs() < 0.25);
        assert_eq!(g.gamma1, g.gamma2);
        let r = spot_radius(&m).unwrap();
        assert!((r / 3600.0 - 1.0).abs() < 0.25);
    }

    #[test]
    fn gamma_linear_in_loss() {
        let a = decay_rates(&MirrorParams { r1: 0.998, ..Default::default() }).unwrap();
        let b = decay_rates(&MirrorParams { r1: 0.996, ..Default::default() }).unwrap();
        assert!((b.gamma1 / a.gamma1 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn radius_square_root_law() {
        let m = MirrorParams::default();
        let a = spot_radius(&m).unwrap();
        let b = spot_radius(&MirrorParams { l_c: 4.0 * m.l_c, ..m }).unwrap();
        assert!((b / a - 2.0).abs() < 1e-12);
    }

    #[test]
    fn low_reflectivity_rejected() {
        assert!(decay_rates(&MirrorParams { r1: 0.8, ..Default::default() }).is_err());
        assert!(spot_radius(&MirrorParams { r2: 1.0, ..Default::default() }).is_err());
    }

    #[test]
    fn implied_lengths_bracket_default() {
        let (lg, lr) = implied_lengths(&MirrorParams::default(), 0.5, 3600.0).unwrap();
        assert!(lg > 100.0 && lr < 100.0);
    }
}
