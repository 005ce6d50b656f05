//! Effective-mass electronic structure of the dot-on-well heterostructure.

mod emission;
mod fit;
mod hamiltonian;
mod potential;

pub use emission::{emission_wavelengths, well_confinement, Binding, Confinement, EmissionResult, Gaps};
pub use fit::{fit_gaussian_envelope, EnvelopeFit};
pub use hamiltonian::{build_hamiltonian, Boundary, Hamiltonian};
pub use potential::{build_mass, build_potential, Region};

use crate::error::{Error, Result};
use crate::lanczos::{lanczos_lowest, LanczosOptions};
use std::fmt::Write as _;

/// Uniform cubic grid centred on the quantum-well midplane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Points per axis (odd).
    pub n: usize,
    /// Spacing, nm.
    pub delta: f64,
}

impl GridSpec {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) || !(delta > 0.0) {
            return Err(Error::Invalid(format!("grid needs odd N >= 3 and delta > 0, got N={n}, delta={delta}")));
        }
        Ok(Self { n, delta })
    }

    /// Desk-scale default: N = 101, Δ = 0.5 nm.
    pub fn desk() -> Self {
        Self { n: 101, delta: 0.5 }
    }

    /// Fine grid: N = 201, Δ = 0.25 nm.
    pub fn fine() -> Self {
        Self { n: 201, delta: 0.25 }
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - 0.5 * (self.n - 1) as f64) * self.delta
    }

    /// Largest coordinate on the grid, nm.
    pub fn half_extent(&self) -> f64 {
        0.5 * (self.n - 1) as f64 * self.delta
    }

    /// Flat index with x fastest.
    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.n * (j + self.n * k)
    }

    pub fn cell_volume(&self) -> f64 {
        self.delta.powi(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeteroGeometry {
    /// Square base side of the dot, nm.
    pub qd_base: f64,
    pub qd_height: f64,
    pub qw_thickness: f64,
    /// Spacer between well top and dot base, nm.
    pub barrier_thickness: f64,
    pub indium_qd: f64,
    pub indium_qw: f64,
}

impl Default for HeteroGeometry {
    fn default() -> Self {
        Self { qd_base: 20.0, qd_height: 1.5, qw_thickness: 6.0, barrier_thickness: 1.0, indium_qd: 0.30, indium_qw: 0.15 }
    }
}

impl HeteroGeometry {
    pub fn validate(&self) -> Result<()> {
        let lengths = [self.qd_base, self.qd_height, self.qw_thickness, self.barrier_thickness];
        if lengths.iter().any(|l| !(*l > 0.0)) {
            return Err(Error::Invalid(format!("geometry lengths must be positive: {self:?}")));
        }
        for x in [self.indium_qd, self.indium_qw] {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::Invalid(format!("indium fraction must lie in (0,1): {x}")));
            }
        }
        Ok(())
    }

    /// (z_min, z_max) of the dot, nm.
    pub fn qd_z(&self) -> (f64, f64) {
        let lo = 0.5 * self.qw_thickness + self.barrier_thickness;
        (lo, lo + self.qd_height)
    }

    pub fn qw_z(&self) -> (f64, f64) {
        (-0.5 * self.qw_thickness, 0.5 * self.qw_thickness)
    }
}

/// InGaAs band gap at low temperature, meV.
pub fn ingaas_gap(x: f64) -> f64 {
    1519.0 - 1584.0 * x + 475.0 * x * x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Particle {
    Electron,
    HeavyHole,
}

/// Band edge (meV) and mass (m₀) for one carrier in one material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEdge {
    pub potential: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierBands {
    pub qd: BandEdge,
    pub qw: BandEdge,
    pub barrier: BandEdge,
}

/// Band edges for both carriers, each measured from its own dot band edge
/// (positive into the barrier).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandProfile {
    pub electron: CarrierBands,
    pub hole: CarrierBands,
}

/// Conduction-band share of the gap discontinuity used for the default profile.
pub const CB_OFFSET_RATIO: f64 = 0.65;

impl BandProfile {
    /// Offsets from the gap interpolation with a 65:35 split.
    pub fn from_composition(geom: &HeteroGeometry) -> Self {
        let eg_b = ingaas_gap(0.0);
        let eg_qd = ingaas_gap(geom.indium_qd);
        let eg_qw = ingaas_gap(geom.indium_qw);
        let ce = CB_OFFSET_RATIO;
        let ch = 1.0 - ce;
        let e_b = ce * (eg_b - eg_qd);
        let e_w = e_b - ce * (eg_b - eg_qw);
        let h_b = ch * (eg_b - eg_qd);
        let h_w = h_b - ch * (eg_b - eg_qw);
        Self {
            electron: CarrierBands {
                qd: BandEdge { potential: 0.0, mass: 0.0504 },
                qw: BandEdge { potential: e_w, mass: 0.0566 },
                barrier: BandEdge { potential: e_b, mass: 0.067 },
            },
            hole: CarrierBands {
                qd: BandEdge { potential: 0.0, mass: 0.48 },
                qw: BandEdge { potential: h_w, mass: 0.495 },
                barrier: BandEdge { potential: h_b, mass: 0.51 },
            },
        }
    }

    pub fn carrier(&self, p: Particle) -> &CarrierBands {
        match p {
            Particle::Electron => &self.electron,
            Particle::HeavyHole => &self.hole,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, c) in [("electron", &self.electron), ("hole", &self.hole)] {
            let v = [c.qd.potential, c.qw.potential, c.barrier.potential];
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Invalid(format!("{name} band edges must be finite")));
            }
            if !(c.qd.potential <= c.qw.potential && c.qw.potential <= c.barrier.potential) {
                return Err(Error::Invalid(format!("{name} band edges must satisfy dot <= well <= barrier")));
            }
            if [c.qd.mass, c.qw.mass, c.barrier.mass].iter().any(|m| !(*m > 0.0)) {
                return Err(Error::Invalid(format!("{name} masses must be positive")));
            }
        }
        Ok(())
    }
}

impl Default for BandProfile {
    fn default() -> Self {
        Self::from_composition(&HeteroGeometry::default())
    }
}

/// Real field on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField3D {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl ScalarField3D {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Invalid(format!("field length {} does not match grid {}", values.len(), grid.len())));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        let mut values = vec![0.0; grid.len()];
        for k in 0..grid.n {
            for j in 0..grid.n {
                for i in 0..grid.n {
                    values[grid.index(i, j, k)] = f(grid.coord(i), grid.coord(j), grid.coord(k));
                }
            }
        }
        Self { grid, values }
    }

    /// Σ|ψ|²Δ³.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_volume()
    }

    /// Scale to unit L² norm and make the sum non-negative.
    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        let sign = if self.values.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        if n > 0.0 {
            self.values.iter_mut().for_each(|v| *v *= sign / n);
        }
    }

    pub fn inner(&self, other: &ScalarField3D) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum::<f64>() * self.grid.cell_volume()
    }

    /// Mirror z → −z.
    pub fn mirrored_z(&self) -> Self {
        let g = self.grid;
        let mut values = vec![0.0; g.len()];
        for k in 0..g.n {
            for j in 0..g.n {
                for i in 0..g.n {
                    values[g.index(i, j, g.n - 1 - k)] = self.values[g.index(i, j, k)];
                }
            }
        }
        Self { grid: g, values }
    }

    /// Long-format CSV: i,j,k,x_nm,y_nm,z_nm,value.
    pub fn to_csv(&self) -> String {
        let g = self.grid;
        let mut s = String::with_capacity(g.len() * 48);
        s.push_str("i,j,k,x_nm,y_nm,z_nm,psi_nm^-3/2\n");
        for k in 0..g.n {
            for j in 0..g.n {
                for i in 0..g.n {
                    let _ = writeln!(
                        s,
                        "{i},{j},{k},{:.4},{:.4},{:.4},{:.9e}",
                        g.coord(i),
                        g.coord(j),
                        g.coord(k),
                        self.values[g.index(i, j, k)]
                    );
                }
            }
        }
        s
    }

    /// |ψ|² on the x–z plane through y = 0 (the map of a side-view density plot).
    pub fn xz_slice_csv(&self) -> String {
        let g = self.grid;
        let j = g.n / 2;
        let mut s = String::from("x_nm,z_nm,density_nm^-3\n");
        for k in 0..g.n {
            for i in 0..g.n {
                let v = self.values[g.index(i, j, k)];
                let _ = writeln!(s, "{:.4},{:.4},{:.9e}", g.coord(i), g.coord(k), v * v);
            }
        }
        s
    }
}

/// Lowest eigenpairs of a heterostructure Hamiltonian.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub energies: Vec<f64>,
    pub states: Vec<ScalarField3D>,
    pub iterations_used: usize,
    pub residual_norms: Vec<f64>,
}

/// Build V and m for `particle`, then return the `k` lowest states.
pub fn solve_states(
    grid: GridSpec,
    geom: &HeteroGeometry,
    bands: &BandProfile,
    particle: Particle,
    k: usize,
    opts: &LanczosOptions,
) -> Result<EigenSolution> {
    let v = build_potential(grid, geom, bands, particle)?;
    let m = build_mass(grid, geom, bands, particle)?;
    let h = build_hamiltonian(&v, &m, Boundary::Dirichlet)?;
    let res = lanczos_lowest(&h, k, opts)?;
    let states = res
        .vectors
        .into_iter()
        .map(|vals| {
            let mut f = ScalarField3D { grid, values: vals };
            f.normalize();
            f
        })
        .collect();
    Ok(EigenSolution { energies: res.values, states, iterations_used: res.matvecs, residual_norms: res.residuals })
}

/// Analytic envelope parameters shared by the exchange and radiative models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelopes {
    /// nm^(−3/2)
    pub n_m: f64,
    /// In-plane radius, nm.
    pub a: f64,
    /// z width, nm.
    pub b: f64,
    /// Offset of the electron envelope from the well centre, nm.
    pub z0: f64,
    /// Exciton Bohr radius, nm.
    pub a_b: f64,
    /// Electron and hole z widths in the well, nm.
    pub c1: f64,
    pub c2: f64,
    /// z normalizations, nm^(−1/2).
    pub m1: f64,
    pub m2: f64,
}

impl Default for GaussianEnvelopes {
    fn default() -> Self {
        Self { n_m: 0.0216, a: 12.0, b: 4.7, z0: 2.0, a_b: 10.0, c1: 6.0, c2: 4.0, m1: 0.4054, m2: 0.5 }
    }
}

impl GaussianEnvelopes {
    pub fn validate(&self) -> Result<()> {
        let w = [self.a, self.b, self.a_b, self.c1, self.c2];
        if w.iter().any(|x| !(*x > 0.0)) || !self.z0.is_finite() || !(self.n_m > 0.0) {
            return Err(Error::Invalid(format!("envelope widths must be positive: {self:?}")));
        }
        Ok(())
    }

    /// N_m that normalizes N·e^{−(z−z0)²/b²}e^{−ρ²/a²} over all space.
    pub fn normalized_amplitude(a: f64, b: f64) -> f64 {
        let pi = std::f64::consts::PI;
        // ∫e^{−2ρ²/a²}d²ρ = πa²/2, ∫e^{−2z²/b²}dz = b√(π/2)
        (pi * a * a / 2.0 * b * (pi / 2.0).sqrt()).powf(-0.5)
    }

    /// ∫|φ|² over all space for the stored N_m.
    pub fn norm_sqr(&self) -> f64 {
        (self.n_m / Self::normalized_amplitude(self.a, self.b)).powi(2)
    }
}
