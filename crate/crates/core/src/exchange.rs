//! Spin-dependent exchange energy between the localized electron and the
//! electron of a k = 0 well exciton.
//!
//! With the Coulomb kernel taken in-plane, the z integrals factor out and the
//! in-plane part reduces, after integrating the hole position analytically,
//! to the 4D integral
//!
//! `K = ∫d²t d²s e^{−2(|t|+|s|)/a_B} e^{−|t−s|²/2a²} / |t−s|`
//!
//! and `V_ex = |r₀|²·(8/π)·C·N_m²·Z·(πa²/2)·K / (A·a_B²)` with
//! `C = e²/(4πε₀ε)`. Replacing each exponential by the Gaussian
//! `e^{−2t²/a_B²}` gives `K = π a_B² π^{3/2} λ / 4`, `1/λ² = 1/2a² + 1/a_B²`.

use crate::electronic::GaussianEnvelopes;
use crate::error::{Error, Result};
use crate::units::COULOMB;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

/// How the three z integrals (two electron coordinates, one hole) are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZReduction {
    /// Z = I₁²·∫|h|²dz: both electron coordinates overlap g with the dot
    /// envelope and the hole density integrates separately.
    Derived,
    /// Z = I₁·I₂, the plain product of the two z overlaps.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeInputs {
    pub envelopes: GaussianEnvelopes,
    /// Polariton quantization area A = πR², nm².
    pub area: f64,
    /// Relative dielectric constant.
    pub epsilon: f64,
    /// Exciton fraction |r₀|² of the polariton.
    pub hopfield_exciton_sq: f64,
    pub reduction: ZReduction,
}

impl ExchangeInputs {
    pub fn with_radius(envelopes: GaussianEnvelopes, radius_nm: f64) -> Self {
        Self {
            envelopes,
            area: PI * radius_nm * radius_nm,
            epsilon: 13.2,
            hopfield_exciton_sq: 0.5,
            reduction: ZReduction::Derived,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.envelopes.validate()?;
        if !(self.area > 0.0) || !(self.epsilon > 0.0) || !(0.0..=1.0).contains(&self.hopfield_exciton_sq) {
            return Err(Error::Invalid(format!(
                "exchange inputs need A > 0, epsilon > 0, |r0|^2 in [0,1]: A={}, eps={}, r0^2={}",
                self.area, self.epsilon, self.hopfield_exciton_sq
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeResult {
    /// µeV
    pub v_ex: f64,
    /// nm
    pub lambda: f64,
    /// Electron z overlap, nm^(−1/2)·nm.
    pub i1: f64,
    /// Hole–dot z overlap used by the product reduction.
    pub i2: f64,
    /// ∫|h|²dz.
    pub hole_norm: f64,
    pub method: Method,
    /// Monte-Carlo standard error, µeV (0 for the closed form).
    pub stderr: f64,
    pub samples: u64,
}

/// M·∫e^{−z²/c²}e^{−(z−z0)²/b²}dz = M√π σ e^{−z0²/(b²+c²)}, 1/σ² = 1/c² + 1/b².
pub fn z_overlap_integral(m: f64, c: f64, b: f64, z0: f64) -> f64 {
    let sigma = (1.0 / (c * c) + 1.0 / (b * b)).powf(-0.5);
    m * PI.sqrt() * sigma * (-z0 * z0 / (b * b + c * c)).exp()
}

/// 1/λ² = 1/2a² + 1/a_B².
pub fn effective_length(a: f64, a_b: f64) -> f64 {
    (1.0 / (2.0 * a * a) + 1.0 / (a_b * a_b)).powf(-0.5)
}

fn z_factor(inp: &ExchangeInputs) -> (f64, f64, f64, f64) {
    let e = &inp.envelopes;
    let i1 = z_overlap_integral(e.m1, e.c1, e.b, e.z0);
    let i2 = z_overlap_integral(e.m2, e.c2, e.b, e.z0);
    let hole_norm = e.m2 * e.m2 * e.c2 * (PI / 2.0).sqrt();
    let z = match inp.reduction {
        ZReduction::Derived => i1 * i1 * hole_norm,
        ZReduction::Product => i1 * i2,
    };
    (z, i1, i2, hole_norm)
}

/// meV per unit of the in-plane integral K.
fn prefactor(inp: &ExchangeInputs, z: f64) -> f64 {
    let e = &inp.envelopes;
    let c = COULOMB / inp.epsilon;
    inp.hopfield_exciton_sq * (8.0 / PI) * c * e.n_m * e.n_m * z * (PI * e.a * e.a / 2.0) / (inp.area * e.a_b * e.a_b)
}

/// Closed form with the Gaussian approximation of the exciton kernel.
pub fn exchange_closed_form(inp: &ExchangeInputs) -> Result<ExchangeResult> {
    inp.validate()?;
    let e = &inp.envelopes;
    let lambda = effective_length(e.a, e.a_b);
    let (z, i1, i2, hole_norm) = z_factor(inp);
    let k = gaussian_kernel_integral(e.a, e.a_b);
    Ok(ExchangeResult {
        v_ex: prefactor(inp, z) * k * 1e3,
        lambda,
        i1,
        i2,
        hole_norm,
        method: Method::ClosedForm,
        stderr: 0.0,
        samples: 0,
    })
}

/// K with e^{−2t/a_B} → e^{−2t²/a_B²}: π a_B² π^{3/2} λ / 4.
pub fn gaussian_kernel_integral(a: f64, a_b: f64) -> f64 {
    PI * a_b * a_b * PI.powf(1.5) * effective_length(a, a_b) / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// e^{−2(|t|+|s|)/a_B}
    Exponential,
    /// e^{−2(t²+s²)/a_B²}
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloOptions {
    pub samples: u64,
    pub seed: u64,
    /// Independent streams; results do not depend on thread count.
    pub streams: u32,
    pub kernel: Kernel,
    /// Multiplies the Coulomb kernel (0 switches the interaction off).
    pub coulomb_scale: f64,
    /// Fail if the relative standard error exceeds this.
    pub max_rel_stderr: Option<f64>,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self { samples: 10_000_000, seed: 2012, streams: 16, kernel: Kernel::Exponential, coulomb_scale: 1.0, max_rel_stderr: None }
    }
}

/// Importance-sampled estimate of the in-plane integral K.
///
/// With x = t + s and y = t − s (d²t d²s = d²x d²y/4), x is drawn from
/// ∝ e^{−2|x|/a_B} and y from ∝ e^{−y²/2a²}/|y|, which absorbs the Coulomb
/// singularity. Since |t|+|s| ≥ |x| the weights are bounded for both kernels.
pub fn kernel_integral_mc(a: f64, a_b: f64, opts: &MonteCarloOptions) -> Result<(f64, f64)> {
    if opts.samples < 2 || opts.streams == 0 {
        return Err(Error::Invalid("Monte Carlo needs at least 2 samples and 1 stream".into()));
    }
    let zx = PI * a_b * a_b / 2.0;
    let zy = 2.0 * PI * a * (PI / 2.0).sqrt();
    let norm = 0.25 * zx * zy;
    let streams = opts.streams as u64;
    let per: Vec<u64> = (0..streams).map(|i| opts.samples / streams + u64::from(i < opts.samples % streams)).collect();
    let partial: Vec<(f64, f64, u64)> = per
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9).wrapping_add(i as u64));
            let mut sum = 0.0;
            let mut sum2 = 0.0;
            for _ in 0..n {
                // |x| ~ Gamma(2, a_B/2)
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = 1.0 - rng.gen::<f64>();
                let rx = -0.5 * a_b * (u1 * u2).ln();
                let px = 2.0 * PI * rng.gen::<f64>();
                // |y| half-normal with scale a (Box–Muller)
                let v1: f64 = 1.0 - rng.gen::<f64>();
                let v2: f64 = rng.gen::<f64>();
                let ry = (a * (-2.0 * v1.ln()).sqrt() * (2.0 * PI * v2).cos()).abs();
                let py = 2.0 * PI * rng.gen::<f64>();
                let (x0, x1) = (rx * px.cos(), rx * px.sin());
                let (y0, y1) = (ry * py.cos(), ry * py.sin());
                let (t0, t1) = (0.5 * (x0 + y0), 0.5 * (x1 + y1));
                let (s0, s1) = (0.5 * (x0 - y0), 0.5 * (x1 - y1));
                let k = match opts.kernel {
                    Kernel::Exponential => (-2.0 * (t0.hypot(t1) + s0.hypot(s1)) / a_b + 2.0 * rx / a_b).exp(),
                    Kernel::Gaussian => {
                        (-2.0 * (t0 * t0 + t1 * t1 + s0 * s0 + s1 * s1) / (a_b * a_b) + 2.0 * rx / a_b).exp()
                    }
                };
                let w = norm * opts.coulomb_scale * k;
                sum += w;
                sum2 += w * w;
            }
            (sum, sum2, n)
        })
        .collect();
    let (s, s2, n) = partial.iter().fold((0.0, 0.0, 0u64), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
    let nf = n as f64;
    let mean = s / nf;
    let var = (s2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok((mean, (var / nf).sqrt()))
}

/// Direct evaluation of the in-plane integral by Monte Carlo.
pub fn exchange_brute_force(inp: &ExchangeInputs, opts: &MonteCarloOptions) -> Result<ExchangeResult> {
    inp.validate()?;
    let e = &inp.envelopes;
    let (z, i1, i2, hole_norm) = z_factor(inp);
    let (k, k_err) = kernel_integral_mc(e.a, e.a_b, opts)?;
    if let Some(max) = opts.max_rel_stderr {
        if k > 0.0 && k_err / k > max {
            return Err(Error::Invalid(format!(
                "budget of {} samples gives relative stderr {:.2e} > {max:.2e}",
                opts.samples,
                k_err / k
            )));
        }
    }
    let p = prefactor(inp, z) * 1e3;
    Ok(ExchangeResult {
        v_ex: p * k,
        lambda: effective_length(e.a, e.a_b),
        i1,
        i2,
        hole_norm,
        method: Method::MonteCarlo,
        stderr: p * k_err,
        samples: opts.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_width_centered_overlap() {
        let v = z_overlap_integral(0.7, 4.7, 4.7, 0.0);
        assert!((v - 0.7 * (PI / 2.0).sqrt() * 4.7).abs() < 1e-14);
        assert!(z_overlap_integral(0.4, 6.0, 4.7, 300.0) == 0.0);
    }

    #[test]
    fn lambda_limits() {
        let l = effective_length(12.0, 10.0);
        assert!(l < 10.0 && l < 2f64.sqrt() * 12.0);
        assert!((effective_length(12.0, 1e12) - 2f64.sqrt() * 12.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_scales_with_area_and_r0() {
        let mut inp = ExchangeInputs::with_radius(GaussianEnvelopes::default(), 3600.0);
        let v1 = exchange_closed_form(&inp).unwrap().v_ex;
        inp.area *= 2.0;
        let v2 = exchange_closed_form(&inp).unwrap().v_ex;
        assert!((v1 / v2 - 2.0).abs() < 1e-12);
        inp.hopfield_exciton_sq = 1.0;
        assert!((exchange_closed_form(&inp).unwrap().v_ex / v2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn product_reduction_reproduces_closed_formula() {
        // N_m² I₁ I₂ a² π√π λ / (8 A ε), with e²/ε written as 4π·e²/(4πε₀ε)
        let env = GaussianEnvelopes::default();
        let mut inp = ExchangeInputs::with_radius(env, 3600.0);
        inp.reduction = ZReduction::Product;
        let r = exchange_closed_form(&inp).unwrap();
        let c = 4.0 * PI * COULOMB / 13.2;
        let closed = env.n_m.powi(2) * r.i1 * r.i2 * env.a.powi(2) * PI * PI.sqrt() * r.lambda * c / (8.0 * inp.area);
        assert!((r.v_ex / (closed * 1e3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infinite_bohr_radius_is_finite() {
        let env = GaussianEnvelopes { a_b: 1e9, ..Default::default() };
        let r = exchange_closed_form(&ExchangeInputs::with_radius(env, 3600.0)).unwrap();
        assert!(r.v_ex.is_finite() && r.v_ex > 0.0);
    }

    #[test]
    fn zero_kernel_gives_zero() {
        let inp = ExchangeInputs::with_radius(GaussianEnvelopes::default(), 3600.0);
        let o = MonteCarloOptions { samples: 1000, coulomb_scale: 0.0, ..Default::default() };
        let r = exchange_brute_force(&inp, &o).unwrap();
        assert_eq!(r.v_ex, 0.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn budget_too_small() {
        let inp = ExchangeInputs::with_radius(GaussianEnvelopes::default(), 3600.0);
        let o = MonteCarloOptions { samples: 100, max_rel_stderr: Some(1e-6), ..Default::default() };
        assert!(exchange_brute_force(&inp, &o).is_err());
    }

    #[test]
    fn mc_is_deterministic() {
        let o = MonteCarloOptions { samples: 20_000, ..Default::default() };
        assert_eq!(kernel_integral_mc(12.0, 10.0, &o).unwrap(), kernel_integral_mc(12.0, 10.0, &o).unwrap());
    }
}
