use super::{BandProfile, GridSpec, HeteroGeometry, Particle, ScalarField3D};
use crate::error::{Error, Result};

/// Minimum clearance between the structure and the grid walls, nm.
pub const MIN_MARGIN: f64 = 10.0;

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Dot,
    Well,
    Barrier,
}

impl Region {
    /// Region membership with half-open intervals [lo, hi) on every axis.
    pub fn at(geom: &HeteroGeometry, x: f64, y: f64, z: f64) -> Region {
        let inside = |v: f64, lo: f64, hi: f64| v >= lo - EPS && v < hi - EPS;
        let (dz0, dz1) = geom.qd_z();
        let h = 0.5 * geom.qd_base;
        if inside(z, dz0, dz1) && inside(x, -h, h) && inside(y, -h, h) {
            return Region::Dot;
        }
        let (wz0, wz1) = geom.qw_z();
        if inside(z, wz0, wz1) {
            Region::Well
        } else {
            Region::Barrier
        }
    }
}

fn check_fits(grid: GridSpec, geom: &HeteroGeometry) -> Result<()> {
    geom.validate()?;
    let ext = grid.half_extent();
    let (w0, _) = geom.qw_z();
    let (_, d1) = geom.qd_z();
    let need = [0.5 * geom.qd_base, d1, -w0].into_iter().fold(0.0, f64::max) + MIN_MARGIN;
    if ext < need {
        return Err(Error::Invalid(format!(
            "grid half-extent {ext} nm is smaller than structure plus {MIN_MARGIN} nm margin ({need} nm)"
        )));
    }
    Ok(())
}

fn region_field(
    grid: GridSpec,
    geom: &HeteroGeometry,
    bands: &BandProfile,
    particle: Particle,
    pick: impl Fn(&super::BandEdge) -> f64,
) -> Result<ScalarField3D> {
    check_fits(grid, geom)?;
    bands.validate()?;
    let c = bands.carrier(particle);
    Ok(ScalarField3D::from_fn(grid, |x, y, z| match Region::at(geom, x, y, z) {
        Region::Dot => pick(&c.qd),
        Region::Well => pick(&c.qw),
        Region::Barrier => pick(&c.barrier),
    }))
}

/// Piecewise-constant band-edge potential (meV) for `particle`.
pub fn build_potential(
    grid: GridSpec,
    geom: &HeteroGeometry,
    bands: &BandProfile,
    particle: Particle,
) -> Result<ScalarField3D> {
    region_field(grid, geom, bands, particle, |e| e.potential)
}

/// Piecewise-constant effective mass (m₀) for `particle`.
pub fn build_mass(grid: GridSpec, geom: &HeteroGeometry, bands: &BandProfile, particle: Particle) -> Result<ScalarField3D> {
    region_field(grid, geom, bands, particle, |e| e.mass)
}
