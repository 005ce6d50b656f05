use super::ScalarField3D;
use crate::error::{Error, Result};
use nalgebra::{Matrix4, Vector4};

/// Separable Gaussian N·e^{−(z−z0)²/b²}·e^{−ρ²/a²} fitted to part of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    pub n_m: f64,
    pub a: f64,
    pub b: f64,
    pub z0: f64,
    /// Root-mean-square residual over the fitted points, nm^(−3/2).
    pub rms: f64,
    pub points: usize,
    /// ∫|ψ|² over the fitted slab.
    pub slab_weight: f64,
}

struct Sample {
    rho2: f64,
    z: f64,
    psi: f64,
}

fn model(p: &Vector4<f64>, s: &Sample) -> (f64, Vector4<f64>) {
    let (n, a, b, z0) = (p[0], p[1], p[2], p[3]);
    let dz = s.z - z0;
    let g = (-dz * dz / (b * b) - s.rho2 / (a * a)).exp();
    let f = n * g;
    let grad = Vector4::new(g, f * 2.0 * s.rho2 / (a * a * a), f * 2.0 * dz * dz / (b * b * b), f * 2.0 * dz / (b * b));
    (f, grad)
}

fn cost(p: &Vector4<f64>, pts: &[Sample]) -> f64 {
    pts.iter().map(|s| (model(p, s).0 - s.psi).powi(2)).sum()
}

/// Least-squares fit of the separable Gaussian to ψ restricted to z ∈ [z_lo, z_hi).
pub fn fit_gaussian_envelope(psi: &ScalarField3D, z_lo: f64, z_hi: f64) -> Result<EnvelopeFit> {
    let g = psi.grid;
    let eps = 1e-9;
    let mut pts = Vec::new();
    for k in 0..g.n {
        let z = g.coord(k);
        if !(z >= z_lo - eps && z < z_hi - eps) {
            continue;
        }
        for j in 0..g.n {
            for i in 0..g.n {
                let (x, y) = (g.coord(i), g.coord(j));
                pts.push(Sample { rho2: x * x + y * y, z, psi: psi.values[g.index(i, j, k)] });
            }
        }
    }
    let wsum: f64 = pts.iter().map(|s| s.psi.max(0.0)).sum();
    let peak = pts.iter().map(|s| s.psi).fold(0.0, f64::max);
    if pts.is_empty() || !(wsum > 0.0) || peak <= 1e-300 {
        return Err(Error::Domain("degenerate fit: no positive amplitude in the fitting region".into()));
    }
    let slab_weight = pts.iter().map(|s| s.psi * s.psi).sum::<f64>() * g.cell_volume();
    // moment-based start
    let z0 = pts.iter().map(|s| s.psi.max(0.0) * s.z).sum::<f64>() / wsum;
    let vz = pts.iter().map(|s| s.psi.max(0.0) * (s.z - z0).powi(2)).sum::<f64>() / wsum;
    let r2 = pts.iter().map(|s| s.psi.max(0.0) * s.rho2).sum::<f64>() / wsum;
    let mut p = Vector4::new(peak, r2.sqrt().max(g.delta), (2.0 * vz).sqrt().max(g.delta), z0);
    let mut c = cost(&p, &pts);
    let mut lambda = 1e-3;
    for _ in 0..500 {
        let mut jtj = Matrix4::<f64>::zeros();
        let mut jtr = Vector4::<f64>::zeros();
        for s in &pts {
            let (f, grad) = model(&p, s);
            jtj += grad * grad.transpose();
            jtr += grad * (f - s.psi);
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj;
            for d in 0..4 {
                a[(d, d)] += lambda * jtj[(d, d)].max(1e-300);
            }
            let Some(step) = a.lu().solve(&(-jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = p + step;
            if trial[1] <= 0.0 || trial[2] <= 0.0 {
                lambda *= 10.0;
                continue;
            }
            let ct = cost(&trial, &pts);
            if ct < c {
                let rel = (c - ct) / c.max(1e-300);
                p = trial;
                c = ct;
                lambda = (lambda / 3.0).max(1e-12);
                improved = rel > 1e-15;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Ok(EnvelopeFit {
        n_m: p[0],
        a: p[1],
        b: p[2],
        z0: p[3],
        rms: (c / pts.len() as f64).sqrt(),
        points: pts.len(),
        slab_weight,
    })
}
