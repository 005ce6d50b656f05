use super::{ingaas_gap, BandProfile, HeteroGeometry, Particle};
use crate::error::{Error, Result};
use crate::units::{HBAR2_OVER_M0, HC};
use nalgebra::{DMatrix, SymmetricEigen};

/// Band gaps of the dot and well materials, meV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaps {
    pub qd: f64,
    pub qw: f64,
}

impl Gaps {
    pub fn from_composition(geom: &HeteroGeometry) -> Self {
        Self { qd: ingaas_gap(geom.indium_qd), qw: ingaas_gap(geom.indium_qw) }
    }
}

/// Binding energies, meV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Binding {
    pub trion: f64,
    pub exciton: f64,
}

impl Default for Binding {
    fn default() -> Self {
        Self { trion: 20.0, exciton: 5.0 }
    }
}

/// Electron and hole confinement energies above their own band edges, meV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confinement {
    pub electron: f64,
    pub hole: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionResult {
    pub qd_trion_nm: f64,
    pub qw_exciton_nm: f64,
    pub trion_energy_mev: f64,
    pub exciton_energy_mev: f64,
    /// Exciton minus trion photon energy, meV.
    pub detuning_mev: f64,
}

/// λ = hc/(E_gap + E_e + E_h − E_binding) for the dot trion and the well exciton.
pub fn emission_wavelengths(dot: Confinement, well: Confinement, gaps: Gaps, binding: Binding) -> Result<EmissionResult> {
    for v in [dot.electron, dot.hole, well.electron, well.hole, gaps.qd, gaps.qw] {
        if !(v >= 0.0) {
            return Err(Error::Invalid(format!("energies must be non-negative, got {v}")));
        }
    }
    let et = gaps.qd + dot.electron + dot.hole - binding.trion;
    let ex = gaps.qw + well.electron + well.hole - binding.exciton;
    if !(et > 0.0 && ex > 0.0) {
        return Err(Error::Domain(format!("non-positive transition energy ({et} meV, {ex} meV)")));
    }
    Ok(EmissionResult {
        qd_trion_nm: HC / et,
        qw_exciton_nm: HC / ex,
        trion_energy_mev: et,
        exciton_energy_mev: ex,
        detuning_mev: ex - et,
    })
}

/// Lowest subband of the bare well (no dot) along z, measured from the well band edge.
pub fn well_confinement(geom: &HeteroGeometry, bands: &BandProfile, particle: Particle, dz: f64) -> Result<f64> {
    geom.validate()?;
    let c = bands.carrier(particle);
    let (w0, w1) = geom.qw_z();
    let half = 0.5 * (w1 - w0) + 30.0;
    let n = (2.0 * half / dz).round() as usize + 1;
    let z = |i: usize| -half + i as f64 * dz;
    let inside = |v: f64| v >= w0 - 1e-9 && v < w1 - 1e-9;
    let (v, m): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|i| if inside(z(i)) { (c.qw.potential, c.qw.mass) } else { (c.barrier.potential, c.barrier.mass) })
        .unzip();
    let s = HBAR2_OVER_M0 / (2.0 * dz * dz);
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let left = if i > 0 { 0.5 * (1.0 / m[i] + 1.0 / m[i - 1]) } else { 1.0 / m[i] };
        let right = if i + 1 < n { 0.5 * (1.0 / m[i] + 1.0 / m[i + 1]) } else { 1.0 / m[i] };
        h[(i, i)] = v[i] + s * (left + right);
        if i + 1 < n {
            h[(i, i + 1)] = -s * right;
            h[(i + 1, i)] = -s * right;
        }
    }
    let e = SymmetricEigen::new(h).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(e - c.qw.potential)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binding_lengthens_wavelength() {
        let d = Confinement { electron: 180.0, hole: 70.0 };
        let w = Confinement { electron: 50.0, hole: 10.0 };
        let g = Gaps { qd: 1086.55, qw: 1292.09 };
        let with = emission_wavelengths(d, w, g, Binding::default()).unwrap();
        let without = emission_wavelengths(d, w, g, Binding { trion: 0.0, exciton: 0.0 }).unwrap();
        assert!(without.qd_trion_nm < with.qd_trion_nm && without.qw_exciton_nm < with.qw_exciton_nm);
        let from_lambda = HC / with.qw_exciton_nm - HC / with.qd_trion_nm;
        assert!((from_lambda - with.detuning_mev).abs() < 1e-9);
    }

    #[test]
    fn wavelengths_from_target_energies() {
        // 937 nm and 918 nm differ by about 27 meV
        let e937 = HC / 937.0;
        let e918 = HC / 918.0;
        assert!(((e918 - e937) - 27.4).abs() < 0.1);
        let g = Gaps { qd: e937 + 20.0, qw: e918 + 5.0 };
        let z = Confinement { electron: 0.0, hole: 0.0 };
        let r = emission_wavelengths(z, z, g, Binding::default()).unwrap();
        assert!((r.qd_trion_nm - 937.0).abs() < 1e-9 && (r.qw_exciton_nm - 918.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_transition() {
        let z = Confinement { electron: 0.0, hole: 0.0 };
        let g = Gaps { qd: 10.0, qw: 10.0 };
        assert!(emission_wavelengths(z, z, g, Binding::default()).is_err());
    }

    #[test]
    fn hard_wall_matches_discrete_oracle() {
        // with an effectively infinite barrier the problem is the discrete hard-wall well:
        // n interior points give E = (ħ²/m dz²)(1 − cos(π/(n+1)))
        let geom = HeteroGeometry::default();
        let mut bands = BandProfile::default();
        bands.electron.qw = super::super::BandEdge { potential: 0.0, mass: 0.067 };
        bands.electron.barrier = super::super::BandEdge { potential: 1.0e12, mass: 0.067 };
        let dz = 0.1;
        let e = well_confinement(&geom, &bands, Particle::Electron, dz).unwrap();
        let interior = (geom.qw_thickness / dz).round();
        let exact = HBAR2_OVER_M0 / (0.067 * dz * dz) * (1.0 - (std::f64::consts::PI / (interior + 1.0)).cos());
        assert!((e / exact - 1.0).abs() < 1e-6, "{e} {exact}");
        // and the continuum limit with the grid's effective width L + dz
        let cont = HBAR2_OVER_M0 / (2.0 * 0.067) * (std::f64::consts::PI / (geom.qw_thickness + dz)).powi(2);
        assert!((e / cont - 1.0).abs() < 2e-3, "{e} {cont}");
    }
}
