//! Thick-restart Lanczos with full reorthogonalization for the lowest
//! eigenpairs of a symmetric, matrix-free operator.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Symmetric linear operator y = A·x.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Dense symmetric matrix as an operator (tests and small problems).
impl LinearOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..self.ncols()).map(|j| self[(i, j)] * x[j]).sum();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Matrix-vector product budget.
    pub max_iter: usize,
    /// Residual bound ‖Av − θv‖ for each reported pair (operator units, unit v).
    pub tol: f64,
    /// Krylov basis size before a restart; clamped to [k + 2, dim].
    pub basis: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { max_iter: 5000, tol: 1e-6, basis: 60, seed: 0x51D_0D07 }
    }
}

#[derive(Debug, Clone)]
pub struct LanczosResult {
    pub values: Vec<f64>,
    /// Unit-norm eigenvectors.
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub matvecs: usize,
    pub restarts: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    const CH: usize = 1 << 14;
    a.par_chunks(CH).zip(b.par_chunks(CH)).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>()).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    const CH: usize = 1 << 14;
    y.par_chunks_mut(CH).zip(x.par_chunks(CH)).for_each(|(ys, xs)| {
        for (a, b) in ys.iter_mut().zip(xs) {
            *a += alpha * b;
        }
    });
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &mut [f64], s: f64) {
    a.par_iter_mut().for_each(|v| *v *= s);
}

/// Classical Gram–Schmidt against all basis vectors, applied twice.
/// Returns the accumulated projection coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coef = vec![0.0; basis.len()];
    for _ in 0..2 {
        let h: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, &c) in basis.iter().zip(&h) {
            axpy(-c, v, w);
        }
        for (a, b) in coef.iter_mut().zip(&h) {
            *a += b;
        }
    }
    coef
}

fn random_unit(dim: usize, rng: &mut ChaCha8Rng, basis: &[Vec<f64>]) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        orthogonalize(basis, &mut v);
        let nv = norm(&v);
        if nv > 1e-8 {
            scale(&mut v, 1.0 / nv);
            return v;
        }
    }
}

/// Deterministic start vector: seeded uniform noise with its mean removed.
pub fn start_vector(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if dim > 1 {
        let mean = v.iter().sum::<f64>() / dim as f64;
        v.iter_mut().for_each(|x| *x -= mean);
    }
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    v
}

/// Replace basis[0..l] by basis·Y[:, 0..l].
fn rotate_basis(basis: &mut [Vec<f64>], y: &DMatrix<f64>, l: usize) {
    let dim = basis[0].len();
    let out: Vec<Vec<f64>> = (0..l)
        .map(|i| {
            let mut o = vec![0.0; dim];
            for (j, v) in basis.iter().enumerate() {
                let c = y[(j, i)];
                if c != 0.0 {
                    axpy(c, v, &mut o);
                }
            }
            o
        })
        .collect();
    for (i, o) in out.into_iter().enumerate() {
        basis[i] = o;
    }
}

/// The `k` smallest eigenpairs of `op`.
///
/// Each cycle extends the basis to `opts.basis` vectors with full
/// reorthogonalization, diagonalizes the projected matrix, and restarts from
/// the lowest Ritz vectors plus the residual direction. Converged pairs are
/// checked with an explicit residual before they are returned.
pub fn lanczos_lowest<A: LinearOperator + ?Sized>(op: &A, k: usize, opts: &LanczosOptions) -> Result<LanczosResult> {
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(Error::Invalid(format!("requested {k} eigenpairs of a {dim}-dimensional operator")));
    }
    if opts.max_iter < k {
        return Err(Error::Invalid("max_iter must be at least k".into()));
    }
    let m = opts.basis.max(k + 2).min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9E37_79B9_7F4A_7C15);
    let mut basis: Vec<Vec<f64>> = vec![start_vector(dim, opts.seed)];
    let mut t = DMatrix::<f64>::zeros(m, m);
    let mut matvecs = 0usize;
    let mut restarts = 0usize;
    let mut w = vec![0.0; dim];
    loop {
        // extend to m vectors
        let resid: Option<(Vec<f64>, f64)>;
        let mut j = basis.len() - 1;
        loop {
            op.apply(&basis[j], &mut w);
            matvecs += 1;
            let coef = orthogonalize(&basis, &mut w);
            for (i, c) in coef.iter().enumerate() {
                t[(i, j)] = *c;
                t[(j, i)] = *c;
            }
            let beta = norm(&w);
            if j + 1 == m || matvecs >= opts.max_iter {
                resid = Some((w.clone(), beta));
                break;
            }
            let tiny = 1e-12 * t[(j, j)].abs().max(1.0);
            let next = if beta > tiny {
                let mut v = w.clone();
                scale(&mut v, 1.0 / beta);
                t[(j + 1, j)] = beta;
                t[(j, j + 1)] = beta;
                v
            } else {
                // invariant subspace found: continue with a fresh direction
                t[(j + 1, j)] = 0.0;
                t[(j, j + 1)] = 0.0;
                random_unit(dim, &mut rng, &basis)
            };
            basis.push(next);
            j += 1;
        }
        let size = basis.len();
        let tm = t.view((0, 0), (size, size)).into_owned();
        let eig = symmetric_eigen(tm);
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let (rvec, rbeta) = resid.expect("extension loop always records a residual");
        let last = size - 1;
        let est: Vec<f64> = order.iter().take(k).map(|&i| (rbeta * eig.eigenvectors[(last, i)]).abs()).collect();
        let worst = est.iter().cloned().fold(0.0, f64::max);
        let exhausted = size == dim;
        let out_of_budget = matvecs >= opts.max_iter;
        if worst < opts.tol || exhausted || out_of_budget {
            let values: Vec<f64> = order.iter().take(k).map(|&i| eig.eigenvalues[i]).collect();
            let vectors: Vec<Vec<f64>> = order
                .iter()
                .take(k)
                .map(|&i| {
                    let mut o = vec![0.0; dim];
                    for (j, v) in basis.iter().enumerate() {
                        axpy(eig.eigenvectors[(j, i)], v, &mut o);
                    }
                    o
                })
                .collect();
            let mut residuals = Vec::with_capacity(k);
            for (v, &theta) in vectors.iter().zip(&values) {
                op.apply(v, &mut w);
                axpy(-theta, v, &mut w);
                residuals.push(norm(&w));
            }
            let true_worst = residuals.iter().cloned().fold(0.0, f64::max);
            if true_worst < opts.tol || (exhausted && true_worst < opts.tol.max(1e-8 * spectral_scale(&values))) {
                return Ok(LanczosResult { values, vectors, residuals, matvecs, restarts });
            }
            if exhausted || out_of_budget {
                return Err(Error::NoConvergence {
                    what: format!("Lanczos, {k} lowest eigenpairs"),
                    iterations: matvecs,
                    residual: true_worst,
                });
            }
            // the recurrence estimate is optimistic: keep restarting
        }
        // thick restart: keep the lowest l Ritz vectors and the residual direction
        let l = (k + (m - k) / 2).min(m - 1).max(k);
        let mut y = DMatrix::<f64>::zeros(size, l);
        for (c, &i) in order.iter().take(l).enumerate() {
            y.set_column(c, &eig.eigenvectors.column(i));
        }
        rotate_basis(&mut basis, &y, l);
        basis.truncate(l);
        t.fill(0.0);
        for (c, &i) in order.iter().take(l).enumerate() {
            t[(c, c)] = eig.eigenvalues[i];
            let s = rbeta * eig.eigenvectors[(last, i)];
            t[(c, l)] = s;
            t[(l, c)] = s;
        }
        let mut v = rvec;
        if rbeta > 0.0 {
            scale(&mut v, 1.0 / rbeta);
            // the residual is already orthogonal; polish against rounding
            orthogonalize(&basis, &mut v);
            let nv = norm(&v);
            scale(&mut v, 1.0 / nv);
        } else {
            v = random_unit(dim, &mut rng, &basis);
        }
        basis.push(v);
        restarts += 1;
    }
}

/// Dense symmetric eigendecomposition polished by cyclic Jacobi sweeps.
///
/// The projected matrices are arrowheads whose couplings shrink towards
/// rounding level as pairs converge; nalgebra's QR iteration alone leaves
/// eigenvector residuals far above machine precision there, and a thick
/// restart would carry that error into the Krylov relation.
fn symmetric_eigen(t: DMatrix<f64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let n = t.nrows();
    let first = SymmetricEigen::new(t.clone());
    let mut q = first.eigenvectors;
    let mut b = q.transpose() * &t * &q;
    let scale = t.amax().max(f64::MIN_POSITIVE);
    for _ in 0..30 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for r in (p + 1)..n {
                off = off.max(b[(p, r)].abs());
            }
        }
        if off <= f64::EPSILON * 1e-2 * scale {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let bpr = b[(p, r)];
                if bpr == 0.0 {
                    continue;
                }
                let theta = (b[(r, r)] - b[(p, p)]) / (2.0 * bpr);
                let tt = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let tt = if theta == 0.0 { 1.0 } else { tt };
                let c = 1.0 / (tt * tt + 1.0).sqrt();
                let s = tt * c;
                for k in 0..n {
                    let (bkp, bkr) = (b[(k, p)], b[(k, r)]);
                    b[(k, p)] = c * bkp - s * bkr;
                    b[(k, r)] = s * bkp + c * bkr;
                }
                for k in 0..n {
                    let (bpk, brk) = (b[(p, k)], b[(r, k)]);
                    b[(p, k)] = c * bpk - s * brk;
                    b[(r, k)] = s * bpk + c * brk;
                }
                for k in 0..n {
                    let (qkp, qkr) = (q[(k, p)], q[(k, r)]);
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }
    SymmetricEigen { eigenvalues: b.diagonal(), eigenvectors: q }
}

fn spectral_scale(values: &[f64]) -> f64 {
    values.iter().map(|v| v.abs()).fold(1.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let n = 40;
        let a = DMatrix::from_fn(n, n, |i, j| if i == j { (i as f64 + 1.0).powi(2) } else { 0.0 });
        let r = lanczos_lowest(&a, 3, &LanczosOptions { tol: 1e-9, basis: 12, ..Default::default() }).unwrap();
        for (i, v) in r.values.iter().enumerate() {
            assert!((v - ((i + 1) as f64).powi(2)).abs() < 1e-9, "{:?}", r.values);
        }
    }

    #[test]
    fn tiny_operator_exhausts_space() {
        let a = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let r = lanczos_lowest(&a, 3, &LanczosOptions { tol: 1e-10, ..Default::default() }).unwrap();
        let s = 2f64.sqrt();
        let exact = [2.0 - s, 2.0, 2.0 + s];
        for (v, e) in r.values.iter().zip(exact) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn reports_non_convergence() {
        let n = 400;
        let a = DMatrix::from_fn(n, n, |i, j| if i == j { i as f64 } else { 0.0 });
        let e = lanczos_lowest(&a, 2, &LanczosOptions { max_iter: 5, tol: 1e-12, basis: 4, seed: 1 }).unwrap_err();
        assert!(matches!(e, Error::NoConvergence { .. }));
    }

    #[test]
    fn small_basis_restarts_reach_tight_residuals() {
        let dim = 49;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        let m = &a + a.transpose();
        let mut exact: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().cloned().collect();
        exact.sort_by(|x, y| x.total_cmp(y));
        for basis in [5, 10, 20] {
            let r = lanczos_lowest(&m, 2, &LanczosOptions { max_iter: 5000, tol: 1e-11, basis, seed: 9 }).unwrap();
            assert!(r.residuals.iter().all(|&x| x < 1e-11), "basis {basis}: {:?}", r.residuals);
            for (v, e) in r.values.iter().zip(&exact) {
                assert!((v - e).abs() < 1e-12 * e.abs().max(1.0));
            }
        }
    }

    #[test]
    fn polished_eigen_is_accurate_for_weak_couplings() {
        // arrowhead with a coupling near rounding level
        let mut t = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-10.79, -9.2, -8.9, 0.3]));
        for (i, c) in [1e-9, 0.7, -0.4].iter().enumerate() {
            t[(i, 3)] = *c;
            t[(3, i)] = *c;
        }
        let e = symmetric_eigen(t.clone());
        let r = &t * &e.eigenvectors - &e.eigenvectors * DMatrix::from_diagonal(&e.eigenvalues);
        assert!(r.amax() < 1e-14, "{}", r.amax());
        let q = &e.eigenvectors;
        assert!((q.transpose() * q - DMatrix::<f64>::identity(4, 4)).amax() < 1e-14);
    }

    #[test]
    fn deterministic_start() {
        assert_eq!(start_vector(100, 7), start_vector(100, 7));
        let v = start_vector(100, 7);
        assert!(v.iter().sum::<f64>().abs() < 1e-12);
    }
}
