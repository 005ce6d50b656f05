use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use qndpol::electronic::{build_hamiltonian, Boundary, GridSpec, ScalarField3D};
use qndpol::lanczos::{lanczos_lowest, LanczosOptions};
use qndpol::units::HBAR2_OVER_M0;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lowest(m: &DMatrix<f64>, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().cloned().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.truncate(k);
    v
}

fn opts(seed: u64) -> LanczosOptions {
    LanczosOptions { max_iter: 20_000, tol: 1e-9, basis: 40, seed }
}

/// Sum of a few random cosines: smooth on the grid scale.
fn smooth_1d(rng: &mut ChaCha8Rng, len: f64) -> impl Fn(f64) -> f64 {
    let terms: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.gen_range(-40.0..40.0), rng.gen_range(0.5..2.5), rng.gen_range(0.0..std::f64::consts::TAU))).collect();
    move |x| terms.iter().map(|(a, f, p)| a * (f * std::f64::consts::PI * x / len + p).cos()).sum()
}

#[test]
fn non_separable_grids_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3usize, 5, 7, 9] {
        let g = GridSpec::new(n, 0.8).unwrap();
        let len = g.half_extent().max(1.0);
        let (fx, fy, fz) = (smooth_1d(&mut rng, len), smooth_1d(&mut rng, len), smooth_1d(&mut rng, len));
        let v = ScalarField3D::from_fn(g, |x, y, z| fx(x) * fy(y) / 40.0 + fz(z) + 5.0 * (x * z / (len * len)).sin());
        let m = ScalarField3D::from_fn(g, |x, _, z| 0.06 + 0.02 * (x / len).cos() * (z / len).sin());
        let h = build_hamiltonian(&v, &m, Boundary::Dirichlet).unwrap();
        let dense = h.to_dense().unwrap();
        assert!((&dense - dense.transpose()).amax() < 1e-9, "matrix not symmetric at N={n}");
        let k = 5.min(g.len());
        let exact = lowest(&dense, k);
        let r = lanczos_lowest(&h, k, &opts(n as u64)).unwrap();
        for (a, b) in r.values.iter().zip(&exact) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "N={n}: {a} vs {b}");
        }
    }
}

fn one_d(n: usize, d: f64, m: f64, v: &dyn Fn(f64) -> f64) -> DMatrix<f64> {
    let g = GridSpec::new(n, d).unwrap();
    let t = HBAR2_OVER_M0 / (2.0 * m * d * d);
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = v(g.coord(i)) + 2.0 * t;
        if i + 1 < n {
            h[(i, i + 1)] = -t;
            h[(i + 1, i)] = -t;
        }
    }
    h
}

#[test]
fn separable_grids_up_to_17_match_kronecker_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in (3usize..=17).step_by(2) {
        let d = 0.6;
        let mass = 0.0504;
        let g = GridSpec::new(n, d).unwrap();
        let len = g.half_extent();
        let (fx, fy, fz) = (smooth_1d(&mut rng, len), smooth_1d(&mut rng, len), smooth_1d(&mut rng, len));
        let v = ScalarField3D::from_fn(g, |x, y, z| fx(x) + fy(y) + fz(z));
        let m = ScalarField3D::from_fn(g, |_, _, _| mass);
        let h = build_hamiltonian(&v, &m, Boundary::Dirichlet).unwrap();
        let ex = SymmetricEigen::new(one_d(n, d, mass, &fx)).eigenvalues;
        let ey = SymmetricEigen::new(one_d(n, d, mass, &fy)).eigenvalues;
        let ez = SymmetricEigen::new(one_d(n, d, mass, &fz)).eigenvalues;
        let mut all = Vec::with_capacity(n * n * n);
        for a in ex.iter() {
            for b in ey.iter() {
                for c in ez.iter() {
                    all.push(a + b + c);
                }
            }
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let k = 5.min(all.len());
        let r = lanczos_lowest(&h, k, &opts(n as u64 + 100)).unwrap();
        for (a, b) in r.values.iter().zip(&all[..k]) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "N={n}: {a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_symmetric_matrices(seed in any::<u64>(), dim in 8usize..60, k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        let m = &a + a.transpose();
        let exact = lowest(&m, k);
        let r = lanczos_lowest(&m, k, &LanczosOptions { max_iter: 50_000, tol: 1e-11, basis: 20, seed }).unwrap();
        for (x, y) in r.values.iter().zip(&exact) {
            prop_assert!((x - y).abs() < 1e-8 * y.abs().max(1.0));
        }
        for (i, v) in r.vectors.iter().enumerate() {
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() < 1e-10);
            for w in &r.vectors[..i] {
                let d: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
                prop_assert!(d.abs() < 1e-8);
            }
        }
    }
}

#[test]
fn fd_ground_state_does_not_overshoot_continuum_box() {
    // hard box of side L: FD kinetic energy approaches 3ħ²π²/(2mL²) from below
    for n in [9usize, 13, 17] {
        let d = 1.0;
        let g = GridSpec::new(n, d).unwrap();
        let v = ScalarField3D::from_fn(g, |_, _, _| 0.0);
        let m = ScalarField3D::from_fn(g, |_, _, _| 0.067);
        let h = build_hamiltonian(&v, &m, Boundary::Dirichlet).unwrap();
        let r = lanczos_lowest(&h, 1, &opts(1)).unwrap();
        let l = (n + 1) as f64 * d;
        let cont = 3.0 * HBAR2_OVER_M0 / (2.0 * 0.067) * (std::f64::consts::PI / l).powi(2);
        assert!(r.values[0] <= cont + 0.1, "N={n}: {} vs {cont}", r.values[0]);
    }
}
