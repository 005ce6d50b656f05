//! Radiative recombination of the localized electron with a well hole.

use crate::electronic::GaussianEnvelopes;
use crate::error::{Error, Result};
use crate::exchange::z_overlap_integral;
use crate::numeric::integrate_to_inf;
use crate::units::{HBAR, C};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiativeInputs {
    pub envelopes: GaussianEnvelopes,
    pub refractive_index: f64,
    /// ħω_x, meV.
    pub exciton_energy: f64,
    /// Free-exciton radiative lifetime, ps.
    pub tau0_exciton: f64,
    /// Excitation area, nm².
    pub area: f64,
}

impl RadiativeInputs {
    pub fn defaults_with_radius(radius_nm: f64) -> Self {
        Self {
            envelopes: GaussianEnvelopes::default(),
            refractive_index: 3.5,
            exciton_energy: 1350.6,
            tau0_exciton: 23.0,
            area: PI * radius_nm * radius_nm,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.envelopes.validate()?;
        if !(self.tau0_exciton > 0.0 && self.area > 0.0 && self.refractive_index > 0.0 && self.exciton_energy > 0.0) {
            return Err(Error::Invalid(format!("radiative inputs out of range: {self:?}")));
        }
        Ok(())
    }
}

/// Closed-form overlap N_m²·M²I₀²·(1/√A)·I₀²·π²a²/(1/a² + 8/a_B²), nm.
///
/// M² is read as the product M₁M₂ of the well z normalizations and I₀² as the
/// product I₁I₂ of the electron and hole z overlaps with the dot envelope.
pub fn dipole_overlap(env: &GaussianEnvelopes, area: f64) -> f64 {
    let i1 = z_overlap_integral(env.m1, env.c1, env.b, env.z0);
    let i2 = z_overlap_integral(env.m2, env.c2, env.b, env.z0);
    let m2 = env.m1 * env.m2;
    let i0sq = i1 * i2;
    env.n_m * env.n_m * m2 * i0sq * i0sq / area.sqrt() * PI * PI * env.a * env.a
        / (1.0 / (env.a * env.a) + 8.0 / (env.a_b * env.a_b))
}

/// Same overlap by direct integration of ∫∫φ(r_e)φ(r_d)ψ(r_e, r_d)/φ_X(0) in the
/// dipole approximation, with the exponential exciton envelope.
///
/// Centre-of-mass and relative in-plane coordinates reduce the 4D in-plane
/// integral to (πa²/2)·2π∫r e^{−r²/2a² − 2r/a_B}dr.
pub fn dipole_overlap_direct(env: &GaussianEnvelopes, area: f64) -> Result<f64> {
    let i1 = z_overlap_integral(env.m1, env.c1, env.b, env.z0);
    let i2 = z_overlap_integral(env.m2, env.c2, env.b, env.z0);
    let (a, ab) = (env.a, env.a_b);
    let radial = integrate_to_inf(|r| r * (-r * r / (2.0 * a * a) - 2.0 * r / ab).exp(), 0.0, 1e-12, 0.0)?;
    Ok(env.n_m * env.n_m * i1 * i2 / area.sqrt() * (PI * a * a / 2.0) * 2.0 * PI * radial)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lifetime {
    /// Single-exciton lifetime, s (infinite for zero overlap).
    pub tau_d: f64,
    /// Overlap used, nm.
    pub overlap: f64,
}

impl Lifetime {
    /// τ_D/N for N excitons.
    pub fn per_excitons(&self, n: f64) -> f64 {
        self.tau_d / n
    }
}

/// τ_D⁻¹ = τ₀⁻¹·(n²ω_x²/c²)·(Γ²/2π)·(2/3).
pub fn radiative_lifetime_with_overlap(inp: &RadiativeInputs, overlap: f64) -> Result<Lifetime> {
    inp.validate()?;
    let k = inp.refractive_index * inp.exciton_energy / (HBAR * C);
    let rate = (k * k) * overlap * overlap / (2.0 * PI) * (2.0 / 3.0) / inp.tau0_exciton;
    let tau_d = if rate > 0.0 { 1.0 / rate * 1e-12 } else { f64::INFINITY };
    Ok(Lifetime { tau_d, overlap })
}

pub fn radiative_lifetime(inp: &RadiativeInputs) -> Result<Lifetime> {
    radiative_lifetime_with_overlap(inp, dipole_overlap(&inp.envelopes, inp.area))
}

/// 1 − e^{−N·τ/τ₀} with τ in ns and τ₀ in s.
pub fn p_rad(n: f64, tau_meas_ns: f64, tau0_s: f64) -> Result<f64> {
    if !(n >= 0.0 && tau_meas_ns >= 0.0 && tau0_s > 0.0) {
        return Err(Error::Invalid("p_rad needs N >= 0, tau >= 0, tau0 > 0".into()));
    }
    Ok(-(-(n * tau_meas_ns * 1e-9 / tau0_s)).exp_m1())
}

/// Linearized N·τ/τ₀ (an upper bound on [`p_rad`]).
pub fn p_rad_linear(n: f64, tau_meas_ns: f64, tau0_s: f64) -> f64 {
    n * tau_meas_ns * 1e-9 / tau0_s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_vanishes_far_away() {
        let env = GaussianEnvelopes { z0: 500.0, ..Default::default() };
        assert_eq!(dipole_overlap(&env, 1e7), 0.0);
        assert_eq!(dipole_overlap_direct(&env, 1e7).unwrap(), 0.0);
    }

    #[test]
    fn overlap_area_scaling() {
        let env = GaussianEnvelopes::default();
        let r = dipole_overlap(&env, 1e6) / dipole_overlap(&env, 4e6);
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn direct_gaussian_limit_matches_radial_closed_form() {
        // with e^{−2r/a_B} → e^{−4r²/a_B²} the radial integral is 1/(2(1/2a² + 4/a_B²))
        let (a, ab) = (12.0, 10.0);
        let v = integrate_to_inf(|r| r * (-r * r / (2.0 * a * a) - 4.0 * r * r / (ab * ab)).exp(), 0.0, 1e-13, 0.0).unwrap();
        let exact = 1.0 / (2.0 * (1.0 / (2.0 * a * a) + 4.0 / (ab * ab)));
        assert!((v / exact - 1.0).abs() < 1e-11);
    }

    #[test]
    fn lifetime_limits() {
        let inp = RadiativeInputs::defaults_with_radius(3600.0);
        let l = radiative_lifetime_with_overlap(&inp, 0.0).unwrap();
        assert!(l.tau_d.is_infinite());
        let l = radiative_lifetime(&inp).unwrap();
        assert!((l.per_excitons(2000.0) * 2000.0 - l.tau_d).abs() < 1e-15 * l.tau_d);
    }

    #[test]
    fn p_rad_forms() {
        assert_eq!(p_rad(2000.0, 0.0, 0.1).unwrap(), 0.0);
        assert_eq!(p_rad(0.0, 64.0, 0.1).unwrap(), 0.0);
        let p = p_rad(2000.0, 64.0, 0.1).unwrap();
        assert!((p - (1.0 - (-0.00128f64).exp())).abs() < 1e-15);
        assert!(p <= p_rad_linear(2000.0, 64.0, 0.1));
    }
}
