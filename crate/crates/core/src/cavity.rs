//! Steady-state reflection of the two polarization polariton modes.
//!
//! Conventions (fixed here and used everywhere else):
//!
//! * Circular basis (p₊, p₋) for the J = ±1 polaritons. The mode matrix is
//!   `K = i·[[δ − s·V_ex, −V_s], [−V_s, δ + s·V_ex]] + (γ/2)·I` with s = ±1 for
//!   electron spin ±½. Positive δ places the probe below the bare mode
//!   (red detuning); the J = +1 resonance sits at δ = +s·V_ex.
//! * An H-polarized unit drive is `f_in = (1, 1)/√2`. The cavity amplitude is
//!   `a = √γ₁·K⁻¹·f_in` and the reflected field `f_out = −f_in + √γ₁·a`.
//! * Linear components: `f_H = (f₊ + f₋)/√2`, `f_V = −i(f₊ − f₋)/√2`, so
//!   `f_± = (f_H ± i·f_V)/√2`.
//! * With this basis the strain term makes the H mode the lower dressed mode,
//!   resonant at δ = +V_s.

use crate::error::{Error, Result};
use crate::numeric::{golden_max, linspace};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Top-mirror decay, meV.
    pub gamma1: f64,
    /// Bottom-mirror decay, meV (0 for a single-sided cavity).
    pub gamma2: f64,
    /// Half of the H–V splitting, meV.
    pub v_s: f64,
    /// Exchange energy, meV.
    pub v_ex: f64,
    pub spin: Spin,
}

impl CavityConfig {
    pub fn single_sided(gamma: f64, v_s: f64, v_ex: f64) -> Self {
        Self { gamma1: gamma, gamma2: 0.0, v_s, v_ex, spin: Spin::Up }
    }

    pub fn two_sided(gamma: f64, v_s: f64, v_ex: f64) -> Self {
        Self { gamma1: gamma / 2.0, gamma2: gamma / 2.0, v_s, v_ex, spin: Spin::Up }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    pub fn with_spin(mut self, spin: Spin) -> Self {
        self.spin = spin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.gamma1 > 0.0
            && self.gamma2 >= 0.0
            && self.v_ex >= 0.0
            && [self.gamma1, self.gamma2, self.v_s, self.v_ex].iter().all(|x| x.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("cavity config needs gamma1 > 0, gamma2 >= 0, v_ex >= 0: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionAmplitudes {
    pub f_h: C64,
    pub f_v: C64,
    pub f_plus: C64,
    pub f_minus: C64,
    /// Intracavity amplitudes (p₊, p₋) for unit input flux amplitude, in √(meV)⁻¹·√meV units
    /// such that |a|² · (flux in ps⁻¹) / (ħ-converted γ) gives a count; see `polariton_number`.
    pub a_plus: C64,
    pub a_minus: C64,
}

impl ReflectionAmplitudes {
    pub fn theta_plus(&self) -> f64 {
        self.f_plus.arg()
    }

    pub fn theta_minus(&self) -> f64 {
        self.f_minus.arg()
    }

    /// |f_H|² + |f_V|²: fraction of the input flux that is reflected.
    pub fn reflectance(&self) -> f64 {
        self.f_h.norm_sqr() + self.f_v.norm_sqr()
    }

    /// Steady-state polariton number per unit cavity flux (ps⁻¹):
    /// N = (|a₊|² + |a₋|²)·ħ with a in meV^{-1/2}.
    pub fn polaritons_per_flux(&self) -> f64 {
        (self.a_plus.norm_sqr() + self.a_minus.norm_sqr()) * crate::units::HBAR
    }
}

/// Solve the 2×2 steady state for an H-polarized unit drive at probe detuning δ (meV).
pub fn steady_state_response(cfg: &CavityConfig, delta: f64) -> Result<ReflectionAmplitudes> {
    cfg.validate()?;
    Ok(response_unchecked(cfg, delta))
}

fn response_unchecked(cfg: &CavityConfig, delta: f64) -> ReflectionAmplitudes {
    let s = cfg.spin.sign();
    let g2 = 0.5 * cfg.gamma();
    let k11 = I * (delta - s * cfg.v_ex) + g2;
    let k22 = I * (delta + s * cfg.v_ex) + g2;
    let k12 = -I * cfg.v_s;
    let det = k11 * k22 - k12 * k12;
    let fin = FRAC_1_SQRT_2;
    let sg = cfg.gamma1.sqrt();
    // K⁻¹ = [[k22, −k12], [−k12, k11]]/det
    let a_plus = sg * fin * (k22 - k12) / det;
    let a_minus = sg * fin * (k11 - k12) / det;
    let f_plus = -fin + sg * a_plus;
    let f_minus = -fin + sg * a_minus;
    let f_h = (f_plus + f_minus) * FRAC_1_SQRT_2;
    let f_v = -I * (f_plus - f_minus) * FRAC_1_SQRT_2;
    ReflectionAmplitudes { f_h, f_v, f_plus, f_minus, a_plus, a_minus }
}

/// Circular amplitudes for V_s = 0 from the decoupled single-mode closed forms.
///
/// Each circular component reflects as `(−1 + γ₁/(i·x + γ/2))/√2` with
/// x = δ ∓ s·V_ex. Single-sided: unit modulus/√2 and phase 2·atan(2x'/γ)
/// with x' = −x. Two-sided symmetric: modulus |x|/√(2(x² + γ²/4)).
pub fn closed_form_circular(cfg: &CavityConfig, delta: f64) -> (C64, C64) {
    let s = cfg.spin.sign();
    let g = cfg.gamma();
    let one = |x: f64| -> C64 {
        if cfg.gamma2 == 0.0 {
            // modulus 1/√2, phase θ with tan θ = γx'/(γ²/4 − x'²), x' = −x
            let xp = -x;
            let theta = (g * xp).atan2(g * g / 4.0 - xp * xp);
            C64::from_polar(FRAC_1_SQRT_2, theta)
        } else if cfg.gamma1 == cfg.gamma2 {
            let modulus = x.abs() / (2.0 * (x * x + g * g / 4.0)).sqrt();
            // −i·x/(i·x + γ/2) has argument atan2(−γx/2, −x²)
            let theta = (-g * x / 2.0).atan2(-x * x);
            C64::from_polar(modulus, theta)
        } else {
            (-1.0 + cfg.gamma1 / (I * x + g / 2.0)) * FRAC_1_SQRT_2
        }
    };
    (one(delta - s * cfg.v_ex), one(delta + s * cfg.v_ex))
}

/// I_D1 − I_D2 behind a half-wave plate, in units of the input flux.
///
/// Equal to 2|f₊||f₋|sin(θ₊ − θ₋); both forms are evaluated and must agree.
pub fn phase_signal(r: &ReflectionAmplitudes) -> f64 {
    let direct = 0.5 * ((r.f_h + r.f_v).norm_sqr() - (r.f_h - r.f_v).norm_sqr());
    debug_assert!({
        let polar = 2.0 * r.f_plus.norm() * r.f_minus.norm() * (r.theta_plus() - r.theta_minus()).sin();
        (direct - polar).abs() <= 1e-12 * (1.0 + direct.abs())
    });
    direct
}

/// The polar form 2|f₊||f₋|sin(θ₊ − θ₋) of the phase signal.
pub fn phase_signal_polar(r: &ReflectionAmplitudes) -> f64 {
    2.0 * r.f_plus.norm() * r.f_minus.norm() * (r.theta_plus() - r.theta_minus()).sin()
}

/// I_D1 − I_D2 behind a quarter-wave plate: |f₊|² − |f₋|².
pub fn intensity_signal(r: &ReflectionAmplitudes) -> f64 {
    0.5 * ((r.f_h + I * r.f_v).norm_sqr() - (r.f_h - I * r.f_v).norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Phase,
    Intensity,
}

impl SignalKind {
    pub fn name(self) -> &'static str {
        match self {
            SignalKind::Phase => "phase",
            SignalKind::Intensity => "intensity",
        }
    }
}

pub fn signal(cfg: &CavityConfig, delta: f64, kind: SignalKind) -> Result<f64> {
    let r = steady_state_response(cfg, delta)?;
    Ok(match kind {
        SignalKind::Phase => phase_signal(&r),
        SignalKind::Intensity => intensity_signal(&r),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DressedModes {
    /// None when V_s = V_ex = 0.
    pub kappa: Option<f64>,
    /// Mode energies relative to the bare polariton, real part; imaginary part −γ/2.
    pub eigen_detunings: [C64; 2],
    /// Exact J = +1 weight of the lower and upper dressed modes.
    pub j_plus_fraction: [f64; 2],
    /// The approximate weights (1 ± κ)²/2 used in the perturbative mode expansion.
    pub approx_weights: [f64; 2],
}

impl DressedModes {
    pub fn splitting(&self) -> f64 {
        self.eigen_detunings[1].re - self.eigen_detunings[0].re
    }
}

/// Eigen-decomposition of the Hermitian part of the mode matrix.
pub fn dressed_modes(cfg: &CavityConfig) -> Result<DressedModes> {
    cfg.validate()?;
    let s = cfg.spin.sign();
    let e = cfg.v_s.hypot(cfg.v_ex);
    let hg = -0.5 * cfg.gamma();
    let eigen_detunings = [C64::new(-e, hg), C64::new(e, hg)];
    if e == 0.0 {
        return Ok(DressedModes {
            kappa: None,
            eigen_detunings,
            j_plus_fraction: [f64::NAN, f64::NAN],
            approx_weights: [f64::NAN, f64::NAN],
        });
    }
    let kappa = s * cfg.v_ex / e;
    let lower = 0.5 * (1.0 + kappa);
    Ok(DressedModes {
        kappa: Some(kappa),
        eigen_detunings,
        j_plus_fraction: [lower, 1.0 - lower],
        approx_weights: [0.5 * (1.0 + kappa).powi(2), 0.5 * (1.0 - kappa).powi(2)],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    pub delta: Vec<f64>,
    pub phase_up: Vec<f64>,
    pub phase_down: Vec<f64>,
    pub intensity_up: Vec<f64>,
    pub intensity_down: Vec<f64>,
    pub config: CavityConfig,
}

impl ResponseCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta_meV,phase_up,phase_down,intensity_up,intensity_down\n");
        for i in 0..self.delta.len() {
            out.push_str(&format!(
                "{:.6},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                self.delta[i], self.phase_up[i], self.phase_down[i], self.intensity_up[i], self.intensity_down[i]
            ));
        }
        out
    }
}

/// Both signals for both spins over n_points detunings in [lo, hi].
pub fn sweep(cfg: &CavityConfig, lo: f64, hi: f64, n_points: usize) -> Result<ResponseCurve> {
    cfg.validate()?;
    if n_points < 2 {
        return Err(Error::Invalid("sweep needs at least 2 points".into()));
    }
    let delta = linspace(lo, hi, n_points);
    let up = cfg.with_spin(Spin::Up);
    let down = cfg.with_spin(Spin::Down);
    let rows: Vec<[f64; 4]> = delta
        .par_iter()
        .map(|&d| {
            let ru = response_unchecked(&up, d);
            let rd = response_unchecked(&down, d);
            [phase_signal(&ru), phase_signal(&rd), intensity_signal(&ru), intensity_signal(&rd)]
        })
        .collect();
    Ok(ResponseCurve {
        phase_up: rows.iter().map(|r| r[0]).collect(),
        phase_down: rows.iter().map(|r| r[1]).collect(),
        intensity_up: rows.iter().map(|r| r[2]).collect(),
        intensity_down: rows.iter().map(|r| r[3]).collect(),
        delta,
        config: *cfg,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub delta: f64,
    pub signal: f64,
    /// Set when the signal is identically zero over the scan.
    pub flat: bool,
}

/// Global maximum of |signal(δ)| over δ ∈ [−3γ, 3γ] for the configured spin.
///
/// Coarse scan, then golden-section refinement inside the bracketing cell.
/// Ties (within 1e-9 relative) go to the smaller |δ|, then to positive δ.
pub fn optimal_detuning(cfg: &CavityConfig, kind: SignalKind) -> Result<Optimum> {
    cfg.validate()?;
    let g = cfg.gamma();
    let n = 1201;
    let grid = linspace(-3.0 * g, 3.0 * g, n);
    let vals: Vec<f64> = grid.iter().map(|&d| signal(cfg, d, kind).map(f64::abs)).collect::<Result<_>>()?;
    let vmax = vals.iter().cloned().fold(0.0, f64::max);
    if vmax < 1e-12 {
        return Ok(Optimum { delta: 0.0, signal: 0.0, flat: true });
    }
    let step = grid[1] - grid[0];
    // refine every local maximum that is within reach of the global one
    let mut best: Option<(f64, f64)> = None;
    for i in 0..n {
        let left = if i > 0 { vals[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < n { vals[i + 1] } else { f64::NEG_INFINITY };
        if vals[i] < left || vals[i] < right || vals[i] < 0.5 * vmax {
            continue;
        }
        let lo = (grid[i] - step).max(grid[0]);
        let hi = (grid[i] + step).min(grid[n - 1]);
        let f = |d: f64| response_abs(cfg, d, kind);
        let (x, fx) = golden_max(f, lo, hi, 1e-10 * g.max(1e-300));
        let (x, fx) = if vals[i] > fx { (grid[i], vals[i]) } else { (x, fx) };
        best = Some(match best {
            None => (x, fx),
            Some((bx, bf)) => {
                let tol = 1e-9 * bf.max(fx);
                if fx > bf + tol || ((fx - bf).abs() <= tol && better_tie(x, bx)) {
                    (x, fx)
                } else {
                    (bx, bf)
                }
            }
        });
    }
    let (delta, fbest) = best.expect("a maximum exists when the signal is not flat");
    // flat symmetric tops resolve only to ~√ε in δ; prefer the centre when it is as high
    let delta = if delta.abs() < step && response_abs(cfg, 0.0, kind) >= fbest * (1.0 - 1e-12) { 0.0 } else { delta };
    Ok(Optimum { delta, signal: signal(cfg, delta, kind)?, flat: false })
}

fn better_tie(x: f64, incumbent: f64) -> bool {
    let (ax, ai) = (x.abs(), incumbent.abs());
    if (ax - ai).abs() > 1e-7 * ax.max(ai).max(1e-12) {
        ax < ai
    } else {
        x > incumbent
    }
}

fn response_abs(cfg: &CavityConfig, d: f64, kind: SignalKind) -> f64 {
    let r = response_unchecked(cfg, d);
    match kind {
        SignalKind::Phase => phase_signal(&r).abs(),
        SignalKind::Intensity => intensity_signal(&r).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VEX: f64 = 0.2e-3;

    #[test]
    fn decoupled_critically_coupled_mode() {
        let cfg = CavityConfig::single_sided(1.0, 0.0, 0.0);
        let r = steady_state_response(&cfg, 0.0).unwrap();
        assert!((r.f_h.norm() - 1.0).abs() < 1e-14);
        assert!(r.f_v.norm() < 1e-15);
    }

    #[test]
    fn two_sided_transmits_resonant_circular_mode() {
        let cfg = CavityConfig::two_sided(1.0, 0.0, VEX);
        let r = steady_state_response(&cfg, VEX).unwrap();
        assert!(r.f_plus.norm() < 1e-15);
        let r = steady_state_response(&cfg.with_spin(Spin::Down), VEX).unwrap();
        assert!(r.f_minus.norm() < 1e-15);
    }

    #[test]
    fn two_sided_modulus_matches_closed_form_with_mirrored_detuning() {
        // closed form: |f₊| = |δ+V|/√(2((δ+V)²+γ²/4)) in the blue-detuning convention
        let cfg = CavityConfig::two_sided(1.0, 0.0, 0.05);
        for &d in &[-1.2, -0.3, 0.0, 0.17, 0.9] {
            let r = steady_state_response(&cfg, d).unwrap();
            let dp = -d;
            let closed = |x: f64| x.abs() / (2.0 * (x * x + 0.25)).sqrt();
            assert!((r.f_plus.norm() - closed(dp + 0.05)).abs() < 1e-14);
            assert!((r.f_minus.norm() - closed(dp - 0.05)).abs() < 1e-14);
        }
    }

    #[test]
    fn single_sided_phase_matches_closed_tangent() {
        let g = 1.0;
        let cfg = CavityConfig::single_sided(g, 0.0, 0.07);
        for &d in &[-0.8, -0.2, 0.1, 0.6] {
            let r = steady_state_response(&cfg, d).unwrap();
            let x = -d + 0.07;
            let closed = g * x / (g * g / 4.0 - x * x);
            assert!((r.theta_plus().tan() - closed).abs() < 1e-10 * (1.0 + closed.abs()));
        }
    }

    #[test]
    fn signal_identities() {
        let cfg = CavityConfig::two_sided(1.0, 0.15, VEX);
        for &d in &[-0.7, 0.0, 0.15, 0.4] {
            let r = steady_state_response(&cfg, d).unwrap();
            assert!((phase_signal(&r) - phase_signal_polar(&r)).abs() < 1e-15);
            let i2 = r.f_plus.norm_sqr() - r.f_minus.norm_sqr();
            assert!((intensity_signal(&r) - i2).abs() < 1e-15);
            let s = (r.f_h - I * r.f_v) * FRAC_1_SQRT_2;
            assert!((s - r.f_minus).norm() < 1e-15);
        }
    }

    #[test]
    fn single_sided_small_vex_phase() {
        let g = 1.0;
        let cfg = CavityConfig::single_sided(g, 0.0, VEX);
        let p = signal(&cfg, 0.0, SignalKind::Phase).unwrap();
        let exact = (4.0 * (2.0 * VEX / g).atan()).sin();
        assert!((p - exact).abs() < 1e-15);
        assert!((p / (8.0 * VEX / g) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn dressed_mode_examples() {
        let m = dressed_modes(&CavityConfig::two_sided(1.0, 0.0, VEX)).unwrap();
        assert_eq!(m.kappa, Some(1.0));
        let m = dressed_modes(&CavityConfig::two_sided(1.0, 0.15, 0.0)).unwrap();
        assert_eq!(m.kappa, Some(0.0));
        let m = dressed_modes(&CavityConfig::two_sided(1.0, 0.15, VEX)).unwrap();
        let k = m.kappa.unwrap();
        assert!((k - 1.333_332_1e-3).abs() < 1e-9, "{k}");
        let m = dressed_modes(&CavityConfig::two_sided(1.0, 0.15, VEX).with_spin(Spin::Down)).unwrap();
        assert!((m.kappa.unwrap() + k).abs() < 1e-15);
        assert!(dressed_modes(&CavityConfig::two_sided(1.0, 0.0, 0.0)).unwrap().kappa.is_none());
    }

    #[test]
    fn dressed_modes_against_numeric_eigenvectors() {
        use nalgebra::Matrix2;
        let cfg = CavityConfig::two_sided(1.0, 0.15, 0.04);
        let h = Matrix2::new(-cfg.v_ex, -cfg.v_s, -cfg.v_s, cfg.v_ex);
        let e = nalgebra::SymmetricEigen::new(h);
        let lo = if e.eigenvalues[0] < e.eigenvalues[1] { 0 } else { 1 };
        let w = e.eigenvectors[(0, lo)].powi(2);
        let m = dressed_modes(&cfg).unwrap();
        assert!((m.j_plus_fraction[0] - w).abs() < 1e-12);
        assert!((m.splitting() - 2.0 * 0.15f64.hypot(0.04)).abs() < 1e-14);
    }

    #[test]
    fn optimum_examples() {
        let o = optimal_detuning(&CavityConfig::two_sided(1.0, 0.0, VEX), SignalKind::Intensity).unwrap();
        assert!((o.delta - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-4, "{o:?}");
        let o = optimal_detuning(&CavityConfig::single_sided(1.0, 0.0, VEX), SignalKind::Phase).unwrap();
        assert_eq!(o.delta, 0.0);
        let o = optimal_detuning(&CavityConfig::single_sided(1.0, 0.0, VEX), SignalKind::Intensity).unwrap();
        assert!(o.flat);
    }

    #[test]
    fn sweep_shape_and_bounds() {
        let c = sweep(&CavityConfig::two_sided(1.0, 0.15, VEX), -2.0, 2.0, 101).unwrap();
        assert_eq!(c.delta.len(), 101);
        for v in c.phase_up.iter().chain(&c.intensity_down) {
            assert!(v.abs() <= 1.0);
        }
        assert!(c.to_csv().starts_with("delta_meV,phase_up,phase_down,intensity_up,intensity_down\n"));
        assert!(sweep(&CavityConfig::two_sided(1.0, 0.0, VEX), 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn rejects_invalid() {
        assert!(steady_state_response(&CavityConfig::single_sided(0.0, 0.0, VEX), 0.0).is_err());
    }
}
