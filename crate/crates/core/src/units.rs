//! Physical constants and conversions.
//!
//! Canonical internal units are meV, nm, ps and K. Rates that are naturally
//! quoted per second are converted only when reported.

use crate::error::{Error, Result};

/// Reduced Planck constant, meV·ps.
pub const HBAR: f64 = 0.658_211_956_9;
/// Boltzmann constant, meV/K.
pub const KB: f64 = 0.086_173_332_62;
/// Speed of light in vacuum, nm/ps.
pub const C: f64 = 299_792.458;
/// e²/(4πε₀), meV·nm.
pub const COULOMB: f64 = 1_439.964_548;
/// ħ²/m₀ with m₀ the free-electron mass, meV·nm².
pub const HBAR2_OVER_M0: f64 = 76.199_642_3;
/// h·c, meV·nm.
pub const HC: f64 = 1_239_841.984;
/// Picoseconds per second.
pub const PS_PER_S: f64 = 1.0e12;
/// Nanoseconds per picosecond.
pub const NS_PER_PS: f64 = 1.0e-3;
/// Square nanometres per square centimetre.
pub const NM2_PER_CM2: f64 = 1.0e14;
/// 1 eV in meV.
pub const MEV_PER_EV: f64 = 1.0e3;
/// Atomic mass unit in meV·ps²/nm² (m_u c² = 931.494 MeV).
pub const AMU: f64 = 931.494_102_42e9 / (C * C);

/// Bundle of the constants above, for reporting in run manifests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// meV·ps
    pub hbar: f64,
    /// meV/K
    pub kb: f64,
    /// nm/ps
    pub c: f64,
    /// meV·nm
    pub coulomb: f64,
    /// ħ²/m₀ in meV·nm², so that ħ²/(2m) = HBAR2_OVER_M0 / (2 m/m₀)
    pub hbar2_over_m0: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { hbar: HBAR, kb: KB, c: C, coulomb: COULOMB, hbar2_over_m0: HBAR2_OVER_M0 }
    }
}

/// Angular frequency in rad/ps for an energy in meV.
pub fn energy_to_rate(e_mev: f64) -> f64 {
    e_mev / HBAR
}

/// Energy in meV for an angular frequency in rad/ps.
pub fn rate_to_energy(w: f64) -> f64 {
    w * HBAR
}

/// Rate in s⁻¹ from a rate in ps⁻¹.
pub fn per_ps_to_per_s(r: f64) -> f64 {
    r * PS_PER_S
}

/// Rate in ps⁻¹ from a rate in s⁻¹.
pub fn per_s_to_per_ps(r: f64) -> f64 {
    r / PS_PER_S
}

/// Photon energy (meV) for a vacuum wavelength (nm), and vice versa.
pub fn wavelength_to_energy(lambda_nm: f64) -> f64 {
    HC / lambda_nm
}

pub fn energy_to_wavelength(e_mev: f64) -> f64 {
    HC / e_mev
}

/// Kinetic prefactor ħ²/(2m) in meV·nm² for a mass in units of m₀.
pub fn kinetic_prefactor(mass_m0: f64) -> f64 {
    HBAR2_OVER_M0 / (2.0 * mass_m0)
}

/// Bose–Einstein occupation 1/(e^{E/kT} − 1). Zero at T = 0.
pub fn bose_occupation(e_mev: f64, t_k: f64) -> Result<f64> {
    if !(e_mev > 0.0) || !e_mev.is_finite() {
        return Err(Error::Domain(format!("bose_occupation needs E > 0, got {e_mev}")));
    }
    if !(t_k >= 0.0) {
        return Err(Error::Domain(format!("temperature must be >= 0, got {t_k}")));
    }
    if t_k == 0.0 {
        return Ok(0.0);
    }
    let x = e_mev / (KB * t_k);
    Ok(1.0 / x.exp_m1())
}
