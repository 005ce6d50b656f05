use super::{GridSpec, ScalarField3D};
use crate::error::{Error, Result};
use crate::lanczos::LinearOperator;
use crate::units::HBAR2_OVER_M0;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Hard walls just outside the grid.
    Dirichlet,
    /// Wrap-around; used to test the stencil dispersion.
    Periodic,
}

/// Matrix-free position-dependent-mass Hamiltonian on a cubic grid.
///
/// Bond (p, p+e_a) carries the hopping −ħ²/(2m̄Δ²) with m̄ the harmonic mean
/// of the two masses; the diagonal is V plus the magnitudes of all six bonds
/// (a wall bond uses the site's own mass).
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    grid: GridSpec,
    boundary: Boundary,
    diag: Vec<f64>,
    /// Magnitude of the forward hopping along x, y, z from each site.
    hop: [Vec<f64>; 3],
}

pub fn build_hamiltonian(potential: &ScalarField3D, mass: &ScalarField3D, boundary: Boundary) -> Result<Hamiltonian> {
    if potential.grid != mass.grid {
        return Err(Error::Invalid("potential and mass fields live on different grids".into()));
    }
    if mass.values.iter().any(|m| !(*m > 0.0)) {
        return Err(Error::Invalid("effective masses must be positive".into()));
    }
    let g = potential.grid;
    let n = g.n;
    let scale = HBAR2_OVER_M0 / (2.0 * g.delta * g.delta);
    let inv_m: Vec<f64> = mass.values.iter().map(|m| 1.0 / m).collect();
    let strides = [1, n, n * n];
    let mut hop = [vec![0.0; g.len()], vec![0.0; g.len()], vec![0.0; g.len()]];
    let mut diag = potential.values.clone();
    for (axis, h) in hop.iter_mut().enumerate() {
        let st = strides[axis];
        for p in 0..g.len() {
            let c = (p / st) % n;
            let q = if c + 1 < n {
                Some(p + st)
            } else if boundary == Boundary::Periodic {
                Some(p + st - n * st)
            } else {
                None
            };
            match q {
                Some(q) => {
                    let t = scale * 0.5 * (inv_m[p] + inv_m[q]);
                    h[p] = t;
                    diag[p] += t;
                    diag[q] += t;
                }
                None => diag[p] += scale * inv_m[p],
            }
            if boundary == Boundary::Dirichlet && c == 0 {
                diag[p] += scale * inv_m[p];
            }
        }
    }
    Ok(Hamiltonian { grid: g, boundary, diag, hop })
}

impl Hamiltonian {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    fn apply_plane(&self, x: &[f64], y: &mut [f64], k: usize) {
        let n = self.grid.n;
        let nn = n * n;
        let periodic = self.boundary == Boundary::Periodic;
        let base = k * nn;
        for j in 0..n {
            for i in 0..n {
                let p = base + j * n + i;
                let mut acc = self.diag[p] * x[p];
                // x neighbours
                if i + 1 < n {
                    acc -= self.hop[0][p] * x[p + 1];
                } else if periodic {
                    acc -= self.hop[0][p] * x[p + 1 - n];
                }
                if i > 0 {
                    acc -= self.hop[0][p - 1] * x[p - 1];
                } else if periodic {
                    acc -= self.hop[0][p + n - 1] * x[p + n - 1];
                }
                // y neighbours
                if j + 1 < n {
                    acc -= self.hop[1][p] * x[p + n];
                } else if periodic {
                    acc -= self.hop[1][p] * x[p + n - nn];
                }
                if j > 0 {
                    acc -= self.hop[1][p - n] * x[p - n];
                } else if periodic {
                    acc -= self.hop[1][p + nn - n] * x[p + nn - n];
                }
                // z neighbours
                let total = nn * n;
                if k + 1 < n {
                    acc -= self.hop[2][p] * x[p + nn];
                } else if periodic {
                    acc -= self.hop[2][p] * x[p + nn - total];
                }
                if k > 0 {
                    acc -= self.hop[2][p - nn] * x[p - nn];
                } else if periodic {
                    acc -= self.hop[2][p + total - nn] * x[p + total - nn];
                }
                y[p - base] = acc;
            }
        }
    }

    /// Dense matrix by columns (small grids only).
    pub fn to_dense(&self) -> Result<nalgebra::DMatrix<f64>> {
        let dim = self.grid.len();
        if dim > 20_000 {
            return Err(Error::Invalid(format!("dense export limited to 20000 unknowns, got {dim}")));
        }
        let mut m = nalgebra::DMatrix::zeros(dim, dim);
        let mut e = vec![0.0; dim];
        let mut col = vec![0.0; dim];
        for c in 0..dim {
            e[c] = 1.0;
            self.apply(&e, &mut col);
            m.column_mut(c).copy_from_slice(&col);
            e[c] = 0.0;
        }
        Ok(m)
    }

    pub fn apply_field(&self, psi: &ScalarField3D) -> Result<ScalarField3D> {
        if psi.grid != self.grid {
            return Err(Error::Invalid("field and Hamiltonian grids differ".into()));
        }
        let mut out = vec![0.0; self.grid.len()];
        self.apply(&psi.values, &mut out);
        Ok(ScalarField3D { grid: self.grid, values: out })
    }
}

impl LinearOperator for Hamiltonian {
    fn dim(&self) -> usize {
        self.grid.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let nn = self.grid.n * self.grid.n;
        y.par_chunks_mut(nn).enumerate().for_each(|(k, plane)| self.apply_plane(x, plane, k));
    }
}
