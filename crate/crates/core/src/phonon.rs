//! Lower-polariton dispersion, Hopfield weights, and the phonon-absorption
//! rate that feeds spin-flip scattering into dark excitons.
//!
//! The detuning δ follows the cavity convention: δ > 0 places the probe below
//! the k = 0 lower polariton, so an absorbed phonon has to supply
//! E_LP(k′) − E_LP(0) + δ.

use crate::electronic::GaussianEnvelopes;
use crate::error::{Error, Result};
use crate::numeric::{bisect, integrate};
use crate::units::{bose_occupation, AMU, HBAR, HBAR2_OVER_M0, KB, MEV_PER_EV, PS_PER_S};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionParams {
    /// Vacuum Rabi splitting g, meV.
    pub rabi_g: f64,
    /// Exciton translational mass, m₀.
    pub exciton_mass: f64,
    /// Cavity photon in-plane mass, m₀.
    pub cavity_mass: f64,
    /// E_cav(0) − E_exc(0), meV.
    pub detuning: f64,
    /// E_exc(0), meV.
    pub exciton_energy: f64,
    /// Electron and hole in-plane masses of the exciton, m₀.
    pub electron_mass: f64,
    pub hole_mass: f64,
}

impl Default for DispersionParams {
    fn default() -> Self {
        let (me, mh) = (0.0566, 0.495);
        Self {
            rabi_g: 2.0,
            exciton_mass: me + mh,
            // E n²/c² for a λ-cavity at 918 nm with n = 3.5
            cavity_mass: 3.24e-5,
            detuning: 0.0,
            exciton_energy: 1350.6,
            electron_mass: me,
            hole_mass: mh,
        }
    }
}

impl DispersionParams {
    pub fn validate(&self) -> Result<()> {
        let pos = [self.rabi_g, self.exciton_mass, self.cavity_mass, self.electron_mass, self.hole_mass];
        if pos.iter().any(|v| !(*v > 0.0)) || !self.detuning.is_finite() {
            return Err(Error::Invalid(format!("dispersion parameters must be positive: {self:?}")));
        }
        Ok(())
    }

    fn parts(&self, k: f64) -> (f64, f64) {
        let ec = self.exciton_energy + self.detuning + HBAR2_OVER_M0 * k * k / (2.0 * self.cavity_mass);
        let ex = self.exciton_energy + HBAR2_OVER_M0 * k * k / (2.0 * self.exciton_mass);
        (ec, ex)
    }

    fn lp_abs(&self, k: f64) -> f64 {
        let (ec, ex) = self.parts(k);
        0.5 * (ec + ex) - 0.5 * (self.rabi_g * self.rabi_g + (ec - ex) * (ec - ex)).sqrt()
    }

    fn up_abs(&self, k: f64) -> f64 {
        let (ec, ex) = self.parts(k);
        0.5 * (ec + ex) + 0.5 * (self.rabi_g * self.rabi_g + (ec - ex) * (ec - ex)).sqrt()
    }

    /// LP energy above E_LP(0), meV.
    pub fn lp_energy(&self, k: f64) -> f64 {
        self.lp_abs(k) - self.lp_abs(0.0)
    }

    /// Absolute LP energy, meV.
    pub fn lp_energy_absolute(&self, k: f64) -> f64 {
        self.lp_abs(k)
    }

    /// UP minus LP at k = 0, meV.
    pub fn lp_up_gap(&self) -> f64 {
        self.up_abs(0.0) - self.lp_abs(0.0)
    }

    /// (|r_k|², |t_k|²): exciton and photon weights of the LP at k.
    pub fn hopfield(&self, k: f64) -> (f64, f64) {
        let (ec, ex) = self.parts(k);
        let d = ec - ex;
        let r = 0.5 * (1.0 + d / d.hypot(self.rabi_g));
        (r, 1.0 - r)
    }

    /// Dark-exciton energy above E_LP(0): the exciton at k = 0.
    pub fn dark_gap(&self) -> f64 {
        self.exciton_energy - self.lp_abs(0.0)
    }
}

/// Smallest k′ with E_LP(k′) − E_LP(0) = Δ_dark (bisection to 1e-6 meV).
pub fn threshold_momentum(disp: &DispersionParams, delta_dark: f64) -> Result<f64> {
    disp.validate()?;
    if !(delta_dark >= 0.0) {
        return Err(Error::Domain(format!("dark gap must be non-negative, got {delta_dark}")));
    }
    if delta_dark == 0.0 {
        return Ok(0.0);
    }
    let f = |k: f64| disp.lp_energy(k) - delta_dark;
    let mut hi = 1e-3;
    while f(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::Domain("no threshold momentum: LP never reaches the dark level".into()));
        }
    }
    // refine in k until the energy residual is below 1e-6 meV
    let k = bisect(f, 0.0, hi, 1e-15)?;
    if f(k).abs() > 1e-6 {
        return Err(Error::Domain("threshold momentum did not resolve the energy to 1e-6 meV".into()));
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhononParams {
    /// Longitudinal sound velocity, nm/ps.
    pub sound_velocity: f64,
    /// Mass density, meV·ps²/nm⁵.
    pub density: f64,
    /// Deformation potentials, eV.
    pub a_e: f64,
    pub a_h: f64,
    /// K
    pub temperature: f64,
}

impl PhononParams {
    /// Mass density in meV·ps²/nm⁵ from g/cm³.
    pub fn density_from_g_per_cm3(rho: f64) -> f64 {
        // 1 g/cm³ = 1e-21 g/nm³ and 1 u = 1.66053907e-24 g
        rho * 1e-21 / 1.660_539_066_60e-24 * AMU
    }
}

impl Default for PhononParams {
    fn default() -> Self {
        Self { sound_velocity: 4.7, density: Self::density_from_g_per_cm3(5.3), a_e: -7.0, a_h: 2.7, temperature: 1.5 }
    }
}

/// Normalized in-plane form factor [1 + (m q a_B / 2M)²]^{−3/2}.
pub fn form_factor_parallel(q: f64, partner_mass: f64, exciton_mass: f64, a_b: f64) -> f64 {
    let x = partner_mass / (2.0 * exciton_mass) * q * a_b;
    (1.0 + x * x).powf(-1.5)
}

/// ∫|g|²e^{iq z}dz for a normalized |g|² ∝ e^{−2z²/c²}: e^{−q²c²/8}.
pub fn form_factor_perp(qz: f64, c: f64) -> f64 {
    (-qz * qz * c * c / 8.0).exp()
}

/// |G(q, qz)|²·V in meV²·nm³.
pub fn deformation_matrix_element(
    q: f64,
    qz: f64,
    ph: &PhononParams,
    disp: &DispersionParams,
    env: &GaussianEnvelopes,
) -> f64 {
    let qq = q.hypot(qz);
    let m = disp.exciton_mass;
    let bracket = ph.a_e * MEV_PER_EV * form_factor_parallel(q, disp.hole_mass, m, env.a_b) * form_factor_perp(qz, env.c1)
        - ph.a_h * MEV_PER_EV * form_factor_parallel(q, disp.electron_mass, m, env.a_b) * form_factor_perp(qz, env.c2);
    HBAR * qq / (2.0 * ph.density * ph.sound_velocity) * bracket * bracket
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringResult {
    /// s⁻¹
    pub gamma_per_polariton: f64,
    /// nm⁻¹
    pub k_threshold: f64,
    /// (k′, integrand) pairs on a diagnostic grid.
    pub samples: Vec<(f64, f64)>,
    /// Largest energy-conservation residual seen at accepted samples, meV.
    pub max_energy_residual: f64,
    /// Diagnostic sample points with no energy-conserving phonon.
    pub rejected_samples: usize,
}

impl ScatteringResult {
    pub fn gamma_dark_total(&self, n_lp: f64, n_up: f64) -> f64 {
        dark_rate_total(self.gamma_per_polariton, n_lp, n_up)
    }
}

struct Kin {
    integrand: f64,
    residual: f64,
    accepted: bool,
}

fn radial_integrand(k: f64, delta: f64, ph: &PhononParams, disp: &DispersionParams, env: &GaussianEnvelopes) -> Kin {
    let e = disp.lp_energy(k) + delta;
    let hu = HBAR * ph.sound_velocity;
    let qtot = e / hu;
    if !(e > 0.0) || qtot <= k {
        return Kin { integrand: 0.0, residual: 0.0, accepted: false };
    }
    let qz = (qtot * qtot - k * k).sqrt();
    let residual = (hu * k.hypot(qz) - e).abs();
    let nb = bose_occupation(e, ph.temperature).unwrap_or(0.0);
    if nb == 0.0 {
        return Kin { integrand: 0.0, residual, accepted: true };
    }
    let (r0, _) = disp.hopfield(0.0);
    let (rk, _) = disp.hopfield(k);
    let g2 = deformation_matrix_element(k, qz, ph, disp, env);
    let jac = hu * qz / qtot;
    // both ±qz roots contribute equally
    let integrand = 2.0 * PI * k * r0 * rk * g2 * nb * 2.0 / jac;
    Kin { integrand, residual, accepted: true }
}

/// Golden-rule absorption rate from the k = 0 LP into LP states at or above
/// the dark-exciton threshold.
pub fn phonon_absorption_rate(
    delta: f64,
    ph: &PhononParams,
    env: &GaussianEnvelopes,
    disp: &DispersionParams,
    rel_tol: f64,
) -> Result<ScatteringResult> {
    disp.validate()?;
    if !(ph.sound_velocity > 0.0 && ph.density > 0.0 && ph.temperature >= 0.0) {
        return Err(Error::Invalid(format!("phonon parameters out of range: {ph:?}")));
    }
    let dark = disp.dark_gap();
    if delta <= -dark {
        return Err(Error::Domain(format!("probe detuning {delta} meV reaches the dark level ({dark} meV above the LP)")));
    }
    let k0 = threshold_momentum(disp, dark)?;
    if ph.temperature == 0.0 {
        return Ok(ScatteringResult {
            gamma_per_polariton: 0.0,
            k_threshold: k0,
            samples: vec![],
            max_energy_residual: 0.0,
            rejected_samples: 0,
        });
    }
    // upper cut where the Bose factor is below e^{-60}
    let kt = KB * ph.temperature;
    let mut kmax = k0.max(1e-4) * 2.0;
    while disp.lp_energy(kmax) + delta < 60.0 * kt + dark {
        kmax *= 1.5;
    }
    let f = |k: f64| radial_integrand(k, delta, ph, disp, env).integrand;
    let mut edges = vec![k0];
    let mut x = k0.max(1e-6);
    while x * 2.0 < kmax {
        x *= 2.0;
        edges.push(x);
    }
    edges.push(kmax);
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += integrate(f, w[0], w[1], rel_tol * 0.1, 0.0)?;
    }
    let mut samples = Vec::new();
    let mut max_res: f64 = 0.0;
    let mut rejected = 0;
    for i in 0..200 {
        let k = k0 + (kmax - k0) * i as f64 / 199.0;
        let kin = radial_integrand(k, delta, ph, disp, env);
        if kin.accepted {
            max_res = max_res.max(kin.residual);
        } else {
            rejected += 1;
        }
        samples.push((k, kin.integrand));
    }
    // (2π/ħ)·(1/(2π)³)·∫, then ps⁻¹ → s⁻¹
    let gamma = 2.0 * PI / HBAR / (2.0 * PI).powi(3) * total * PS_PER_S;
    Ok(ScatteringResult {
        gamma_per_polariton: gamma,
        k_threshold: k0,
        samples,
        max_energy_residual: max_res,
        rejected_samples: rejected,
    })
}

/// (N_LP + N_UP)·Γ.
pub fn dark_rate_total(gamma_per_polariton: f64, n_lp: f64, n_up: f64) -> f64 {
    (n_lp + n_up) * gamma_per_polariton
}

/// N = γ₁ t₀² F / (δ² + γ²/4) with energies in rad/ps and F in ps⁻¹.
pub fn polariton_count(input_flux: f64, delta: f64, gamma1: f64, gamma: f64, t0_sq: f64) -> Result<f64> {
    if !(input_flux >= 0.0) {
        return Err(Error::Invalid(format!("flux must be non-negative, got {input_flux}")));
    }
    let w = |e: f64| e / HBAR;
    Ok(w(gamma1) * t0_sq * input_flux / (w(delta).powi(2) + w(gamma).powi(2) / 4.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCheck {
    /// cm⁻²
    pub density: f64,
    pub n_ab2: f64,
    pub pass: bool,
}

/// Areal density N/(πR²) and the diluteness parameter n·a_B².
pub fn density_check(n: f64, radius_nm: f64, a_b: f64, threshold: f64) -> Result<DensityCheck> {
    if !(radius_nm > 0.0) || !(n >= 0.0) {
        return Err(Error::Invalid("density check needs R > 0 and N >= 0".into()));
    }
    let per_nm2 = n / (PI * radius_nm * radius_nm);
    let n_ab2 = per_nm2 * a_b * a_b;
    Ok(DensityCheck { density: per_nm2 * crate::units::NM2_PER_CM2, n_ab2, pass: n_ab2 < threshold })
}
