//! Detection chain, shot-noise error, measurement time and the error budget.

use crate::cavity::{optimal_detuning, steady_state_response, CavityConfig, ReflectionAmplitudes, SignalKind, Spin};
use crate::error::{Error, Result};
use crate::numeric::bisect;
use crate::radiative::{p_rad, p_rad_linear};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use statrs::distribution::{Discrete, DiscreteCDF, Poisson};
use statrs::function::erf::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Waveplate {
    /// Projects onto (f_H ± f_V)/√2; reads the phase response.
    Half,
    /// Projects onto (f_H ± i·f_V)/√2; reads the intensity response.
    Quarter,
}

impl Waveplate {
    pub fn for_signal(kind: SignalKind) -> Self {
        match kind {
            SignalKind::Phase => Waveplate::Half,
            SignalKind::Intensity => Waveplate::Quarter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionChain {
    pub bs_to_cavity: f64,
    pub bs_to_detectors: f64,
    pub waveplate: Waveplate,
    pub detector_efficiency: f64,
}

impl Default for DetectionChain {
    fn default() -> Self {
        Self { bs_to_cavity: 0.10, bs_to_detectors: 0.90, waveplate: Waveplate::Half, detector_efficiency: 1.0 }
    }
}

impl DetectionChain {
    pub fn with_waveplate(mut self, w: Waveplate) -> Self {
        self.waveplate = w;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if unit(self.bs_to_cavity) && unit(self.bs_to_detectors) && unit(self.detector_efficiency) && self.bs_to_cavity > 0.0 {
            Ok(())
        } else {
            Err(Error::Invalid(format!("detection chain fractions must lie in [0, 1]: {self:?}")))
        }
    }
}

/// Photon fluxes (ps⁻¹) on D1 and D2 for a laser flux in ps⁻¹.
pub fn detector_fluxes(r: &ReflectionAmplitudes, laser_flux: f64, chain: &DetectionChain) -> Result<(f64, f64)> {
    chain.validate()?;
    if !(laser_flux >= 0.0) {
        return Err(Error::Invalid(format!("laser flux must be non-negative, got {laser_flux}")));
    }
    let v = match chain.waveplate {
        Waveplate::Half => r.f_v,
        Waveplate::Quarter => C64::i() * r.f_v,
    };
    let scale = laser_flux * chain.bs_to_cavity * chain.bs_to_detectors * chain.detector_efficiency;
    let d1 = ((r.f_h + v) * FRAC_1_SQRT_2).norm_sqr();
    let d2 = ((r.f_h - v) * FRAC_1_SQRT_2).norm_sqr();
    Ok((scale * d1, scale * d2))
}

/// σ = √(n₁ + n₂) of the count difference of two Poisson streams.
pub fn shot_noise_sigma(n1: f64, n2: f64) -> f64 {
    (n1 + n2).sqrt()
}

/// erfc(|n₁ − n₂|/(√2·σ)): both tails of the Gaussian count-difference model.
pub fn shot_noise_error(n1: f64, n2: f64) -> Result<f64> {
    if !(n1 >= 0.0 && n2 >= 0.0 && n1 + n2 > 0.0) {
        return Err(Error::Invalid(format!("shot-noise error needs positive total counts, got ({n1}, {n2})")));
    }
    Ok(erfc((n1 - n2).abs() / (SQRT_2 * shot_noise_sigma(n1, n2))))
}

/// Exact counterpart of [`shot_noise_error`]: 2·[P(D < 0) + ½·P(D = 0)] for
/// D = N₁ − N₂ with Poisson N₁, N₂ of means n₁ ≥ n₂ (Skellam difference).
pub fn skellam_error(n1: f64, n2: f64) -> Result<f64> {
    let (hi, lo) = if n1 >= n2 { (n1, n2) } else { (n2, n1) };
    if !(lo > 0.0) {
        return Err(Error::Invalid(format!("Skellam error needs positive means, got ({n1}, {n2})")));
    }
    let p_hi = Poisson::new(hi).map_err(|e| Error::Invalid(e.to_string()))?;
    let p_lo = Poisson::new(lo).map_err(|e| Error::Invalid(e.to_string()))?;
    // P(N_hi < N_lo) + ½P(N_hi = N_lo) = Σ_k P(N_hi = k)·[P(N_lo > k) + ½P(N_lo = k)]
    let width = 40.0 * hi.sqrt() + 40.0;
    let k_lo = (hi - width).max(0.0) as u64;
    let k_hi = (hi + width) as u64;
    let mut acc = 0.0;
    for k in k_lo..=k_hi {
        let w = p_hi.pmf(k);
        if w == 0.0 {
            continue;
        }
        acc += w * (p_lo.sf(k) + 0.5 * p_lo.pmf(k));
    }
    Ok(2.0 * acc)
}

/// z with erfc(z) = target.
pub fn erfc_inverse(target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Invalid(format!("target error probability must lie in (0, 1), got {target}")));
    }
    bisect(|z| erfc(z) - target, 0.0, 30.0, 1e-15)
}

/// τ = 2z²(I₁ + I₂)/(I₁ − I₂)² in ns, with erfc(z) = target and fluxes in ps⁻¹.
pub fn required_measurement_time(i_d1: f64, i_d2: f64, target_p: f64) -> Result<f64> {
    if !(i_d1 >= 0.0 && i_d2 >= 0.0) {
        return Err(Error::Invalid("detector fluxes must be non-negative".into()));
    }
    let contrast = i_d1 - i_d2;
    if contrast == 0.0 || !contrast.is_finite() {
        return Err(Error::Domain("zero signal contrast: the spin states cannot be discriminated".into()));
    }
    let z = erfc_inverse(target_p)?;
    Ok(2.0 * z * z * (i_d1 + i_d2) / (contrast * contrast) * 1e-3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CavityKind {
    SingleSided,
    TwoSided,
}

impl CavityKind {
    pub fn name(self) -> &'static str {
        match self {
            CavityKind::SingleSided => "single_sided",
            CavityKind::TwoSided => "two_sided",
        }
    }

    pub fn config(self, gamma: f64, v_s: f64, v_ex: f64) -> CavityConfig {
        match self {
            CavityKind::SingleSided => CavityConfig::single_sided(gamma, v_s, v_ex),
            CavityKind::TwoSided => CavityConfig::two_sided(gamma, v_s, v_ex),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub cavity: CavityKind,
    pub signal: SignalKind,
    /// meV
    pub v_s: f64,
}

impl Scenario {
    pub fn label(&self) -> String {
        format!("{}_{}_vs{}meV", self.cavity.name(), self.signal.name(), self.v_s)
    }

    /// {two, single}-sided × {V_s = 0, v_s} × {phase, intensity}, in table order.
    pub fn standard_set(v_s: f64) -> Vec<Scenario> {
        let mut out = Vec::with_capacity(8);
        for cavity in [CavityKind::TwoSided, CavityKind::SingleSided] {
            for vs in [0.0, v_s] {
                for signal in [SignalKind::Phase, SignalKind::Intensity] {
                    out.push(Scenario { cavity, signal, v_s: vs });
                }
            }
        }
        out
    }
}

/// Per-polariton spin-flip rates (s⁻¹) used for the dark-state error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkRates {
    pub single_sided: f64,
    pub two_sided: f64,
}

impl DarkRates {
    pub fn for_cavity(&self, c: CavityKind) -> f64 {
        match c {
            CavityKind::SingleSided => self.single_sided,
            CavityKind::TwoSided => self.two_sided,
        }
    }
}

impl Default for DarkRates {
    fn default() -> Self {
        Self { single_sided: 30.0, two_sided: 0.2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiativeForm {
    Linear,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetParams {
    /// γ₁ + γ₂, meV.
    pub gamma: f64,
    /// meV
    pub v_ex: f64,
    /// Steady-state polariton number the drive is tuned to.
    pub n_polaritons: f64,
    /// LP-UP splitting, meV.
    pub rabi_splitting: f64,
    pub target_p_sn: f64,
    pub chain: DetectionChain,
    pub dark_rates: DarkRates,
    /// Radiative lifetime per polariton pair, s.
    pub tau0_s: f64,
    pub radiative_form: RadiativeForm,
}

impl Default for BudgetParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            v_ex: 0.2e-3,
            n_polaritons: 2000.0,
            rabi_splitting: 2.0,
            target_p_sn: 4e-4,
            chain: DetectionChain::default(),
            dark_rates: DarkRates::default(),
            tau0_s: 0.39,
            radiative_form: RadiativeForm::Linear,
        }
    }
}

impl BudgetParams {
    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        let ok = self.gamma > 0.0
            && self.v_ex >= 0.0
            && self.n_polaritons > 0.0
            && self.rabi_splitting > 0.0
            && self.target_p_sn > 0.0
            && self.target_p_sn < 1.0
            && self.dark_rates.single_sided >= 0.0
            && self.dark_rates.two_sided >= 0.0
            && self.tau0_s > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("budget parameters out of range: {self:?}")))
        }
    }

    /// Upper-polariton population excited alongside N lower polaritons by a
    /// probe at detuning δ below the LP (Lorentzian ratio).
    pub fn upper_population(&self, delta: f64) -> f64 {
        let h = self.gamma * self.gamma / 4.0;
        let du = self.rabi_splitting + delta;
        self.n_polaritons * (delta * delta + h) / (du * du + h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub tau_meas_ns: f64,
    pub p_sn: f64,
    pub p_dark: f64,
    pub p_rad: f64,
    pub p_total: f64,
    /// meV
    pub operating_delta: f64,
    /// ps⁻¹
    pub i_d1: f64,
    pub i_d2: f64,
    /// ps⁻¹ before the beam splitter.
    pub laser_flux: f64,
    pub n_upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetReport {
    pub scenario: Scenario,
    /// None when the signal vanishes identically (unmeasurable).
    pub budget: Option<Budget>,
}

/// Error budget for one scenario at its optimal detuning.
pub fn evaluate_scenario(sc: &Scenario, p: &BudgetParams) -> Result<BudgetReport> {
    p.validate()?;
    let cfg = sc.cavity.config(p.gamma, sc.v_s, p.v_ex).with_spin(Spin::Up);
    let opt = optimal_detuning(&cfg, sc.signal)?;
    if opt.flat {
        return Ok(BudgetReport { scenario: *sc, budget: None });
    }
    let delta = opt.delta;
    let r = steady_state_response(&cfg, delta)?;
    let cavity_flux = p.n_polaritons / r.polaritons_per_flux();
    let laser_flux = cavity_flux / p.chain.bs_to_cavity;
    let chain = p.chain.with_waveplate(Waveplate::for_signal(sc.signal));
    let (i_d1, i_d2) = detector_fluxes(&r, laser_flux, &chain)?;
    let tau = required_measurement_time(i_d1, i_d2, p.target_p_sn)?;
    let tau_ps = tau * 1e3;
    let p_sn = shot_noise_error(tau_ps * i_d1, tau_ps * i_d2)?;
    let n_upper = p.upper_population(delta);
    let p_dark = p.dark_rates.for_cavity(sc.cavity) * (p.n_polaritons + n_upper) * tau * 1e-9;
    let p_rad = match p.radiative_form {
        RadiativeForm::Linear => p_rad_linear(p.n_polaritons, tau, p.tau0_s),
        RadiativeForm::Exponential => p_rad(p.n_polaritons, tau, p.tau0_s)?,
    };
    let budget = Budget {
        tau_meas_ns: tau,
        p_sn,
        p_dark,
        p_rad,
        p_total: p_sn + p_dark + p_rad,
        operating_delta: delta,
        i_d1,
        i_d2,
        laser_flux,
        n_upper,
    };
    Ok(BudgetReport { scenario: *sc, budget: Some(budget) })
}

pub fn build_table1(scenarios: &[Scenario], p: &BudgetParams) -> Result<Vec<BudgetReport>> {
    scenarios.par_iter().map(|s| evaluate_scenario(s, p)).collect()
}

pub fn table_to_csv(rows: &[BudgetReport]) -> String {
    let mut s = String::from(
        "scenario,tau_meas_ns,p_rad_pct,p_dark_pct,p_sn_pct,p_total_pct,operating_delta_meV,I_D1_per_ps,I_D2_per_ps,laser_flux_per_ps,n_upper\n",
    );
    for r in rows {
        s.push_str(&r.scenario.label());
        match &r.budget {
            Some(b) => s.push_str(&format!(
                ",{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.9e},{:.9e},{:.9e},{:.9e},{:.6e}\n",
                b.tau_meas_ns,
                100.0 * b.p_rad,
                100.0 * b.p_dark,
                100.0 * b.p_sn,
                100.0 * b.p_total,
                b.operating_delta,
                b.i_d1,
                b.i_d2,
                b.laser_flux,
                b.n_upper
            )),
            None => s.push_str(",unmeasurable,-,-,-,-,-,-,-,-,-\n"),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_is_root_of_sum() {
        let s = shot_noise_sigma(1803312.0, 1796688.0);
        assert!((s - 1897.4).abs() < 0.1);
        // the squared form would be ~2.5e6, far from the worked number
        assert!((1803312f64.hypot(1796688.0) - 1897.4).abs() > 1e6);
    }

    #[test]
    fn coin_flip_and_far_tail() {
        assert_eq!(shot_noise_error(5.0, 5.0).unwrap(), 1.0);
        let sigma = shot_noise_sigma(1e6, 1e6);
        assert!(shot_noise_error(1e6 + 5.0 * sigma, 1e6 - 5.0 * sigma).unwrap() < 1e-20);
        assert!(shot_noise_error(0.0, 0.0).is_err());
    }

    #[test]
    fn erfc_inverse_round_trip() {
        for &t in &[1e-10, 4e-4, 0.3, 0.9] {
            let z = erfc_inverse(t).unwrap();
            assert!((erfc(z) / t - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn contrast_scaling() {
        let t1 = required_measurement_time(101.0, 99.0, 4e-4).unwrap();
        let t4 = required_measurement_time(104.0, 96.0, 4e-4).unwrap();
        assert!((t1 / t4 / 16.0 - 1.0).abs() < 1e-9);
        assert!(required_measurement_time(3.0, 3.0, 4e-4).is_err());
    }

    #[test]
    fn skellam_symmetric_counts_give_unity() {
        let p = skellam_error(400.0, 400.0).unwrap();
        assert!((p - 1.0).abs() < 1e-10);
    }

    #[test]
    fn unmeasurable_single_sided_intensity() {
        let sc = Scenario { cavity: CavityKind::SingleSided, signal: SignalKind::Intensity, v_s: 0.0 };
        let r = evaluate_scenario(&sc, &BudgetParams::default()).unwrap();
        assert!(r.budget.is_none());
    }

    #[test]
    fn standard_set_has_eight_rows() {
        let s = Scenario::standard_set(0.15);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0].cavity, CavityKind::TwoSided);
        assert_eq!(s[5].signal, SignalKind::Intensity);
        assert_eq!(s[5].v_s, 0.0);
    }
}
