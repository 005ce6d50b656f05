use proptest::prelude::*;
use qndpol::budget::*;
use qndpol::cavity::{steady_state_response, CavityConfig, SignalKind};

proptest! {
    #[test]
    fn solver_round_trip(i2 in 10.0f64..1000.0, rel in 1e-4f64..0.1, target in 1e-8f64..0.3) {
        let i1 = i2 * (1.0 + rel);
        let tau_ns = required_measurement_time(i1, i2, target).unwrap();
        let ps = tau_ns * 1e3;
        let p = shot_noise_error(ps * i1, ps * i2).unwrap();
        prop_assert!((p - target).abs() < 1e-6);
    }

    #[test]
    fn efficiency_compensated_by_drive(eff in 0.05f64..1.0, d in -2.0f64..2.0) {
        let c = CavityConfig::two_sided(1.0, 0.15, 0.2e-3);
        let r = steady_state_response(&c, d).unwrap();
        let base = DetectionChain::default();
        let (a1, a2) = detector_fluxes(&r, 1000.0, &base).unwrap();
        let lossy = DetectionChain { detector_efficiency: eff, ..base };
        let (b1, b2) = detector_fluxes(&r, 1000.0 / eff, &lossy).unwrap();
        prop_assume!(a1 != a2);
        let ta = required_measurement_time(a1, a2, 4e-4).unwrap();
        let tb = required_measurement_time(b1, b2, 4e-4).unwrap();
        prop_assert!((ta / tb - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lossless_flux_conservation(d in -3.0f64..3.0, half in any::<bool>(), flux in 1.0f64..1e4) {
        let c = CavityConfig::single_sided(1.0, 0.1, 0.2e-3);
        let r = steady_state_response(&c, d).unwrap();
        let w = if half { Waveplate::Half } else { Waveplate::Quarter };
        let chain = DetectionChain::default().with_waveplate(w);
        let (i1, i2) = detector_fluxes(&r, flux, &chain).unwrap();
        let expect = flux * chain.bs_to_cavity * r.reflectance() * chain.bs_to_detectors;
        prop_assert!((i1 + i2 - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn erfc_tail_bound(sigmas in 10.0f64..30.0, n in 1e4f64..1e8) {
        let s = (2.0 * n).sqrt();
        let delta = sigmas * s;
        prop_assert!(shot_noise_error(n + delta / 2.0, n - delta / 2.0).unwrap() < 1e-20);
    }
}

#[test]
fn spin_flip_swaps_detectors() {
    let c = CavityConfig::single_sided(1.0, 0.0, 0.2e-3);
    let up = steady_state_response(&c, 0.3).unwrap();
    let down = steady_state_response(&c.with_spin(qndpol::cavity::Spin::Down), 0.3).unwrap();
    let chain = DetectionChain::default();
    let (a1, a2) = detector_fluxes(&up, 5000.0, &chain).unwrap();
    let (b1, b2) = detector_fluxes(&down, 5000.0, &chain).unwrap();
    assert!((a1 - b2).abs() < 1e-12 && (a2 - b1).abs() < 1e-12);
}

#[test]
fn no_exchange_equal_fluxes() {
    let c = CavityConfig::single_sided(1.0, 0.0, 0.0);
    let r = steady_state_response(&c, 0.0).unwrap();
    let (a, b) = detector_fluxes(&r, 5000.0, &DetectionChain::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_sided_detector_fluxes_at_resonance() {
    let c = CavityConfig::single_sided(1.0, 0.0, 0.2e-3);
    let r = steady_state_response(&c, 0.0).unwrap();
    let (a, b) = detector_fluxes(&r, 5000.0, &DetectionChain::default()).unwrap();
    assert!((a + b - 450.0).abs() < 1e-9);
    assert!((a / 225.414 - 1.0).abs() < 0.01 && (b / 224.586 - 1.0).abs() < 0.01);
    assert!(a > b);
}

#[test]
fn skellam_tracks_gaussian() {
    for (n1, n2) in [(1803312.0, 1796688.0), (20500.0, 19500.0), (1.0e5, 0.99e5)] {
        let g = shot_noise_error(n1, n2).unwrap();
        let s = skellam_error(n1, n2).unwrap();
        assert!((s / g - 1.0).abs() < 0.05, "{n1} {n2}: {s} vs {g}");
    }
}

#[test]
fn table_totals_and_linearity() {
    let p = BudgetParams::default();
    let rows = build_table1(&Scenario::standard_set(0.15), &p).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.iter().filter(|r| r.budget.is_none()).count(), 1);
    for r in rows.iter().filter_map(|r| r.budget) {
        assert!((r.p_total - (r.p_sn + r.p_dark + r.p_rad)).abs() < 1e-15);
        assert!((0.0..=1.0).contains(&r.p_total));
        assert!((r.p_sn - p.target_p_sn).abs() < 1e-9);
    }
    // P_dark and P_rad scale with τ: doubling the target time halves nothing else
    let sc = Scenario { cavity: CavityKind::TwoSided, signal: SignalKind::Intensity, v_s: 0.0 };
    let a = evaluate_scenario(&sc, &p).unwrap().budget.unwrap();
    let b = evaluate_scenario(&sc, &BudgetParams { target_p_sn: 1e-6, ..p }).unwrap().budget.unwrap();
    assert!(b.tau_meas_ns > a.tau_meas_ns);
    assert!((b.p_dark / a.p_dark - b.tau_meas_ns / a.tau_meas_ns).abs() < 1e-9);
    assert!((b.p_rad / a.p_rad - b.tau_meas_ns / a.tau_meas_ns).abs() < 1e-9);
}

#[test]
fn csv_marks_unmeasurable_row() {
    let rows = build_table1(&Scenario::standard_set(0.15), &BudgetParams::default()).unwrap();
    let csv = table_to_csv(&rows);
    assert!(csv.starts_with("scenario,tau_meas_ns,p_rad_pct,p_dark_pct,p_sn_pct,p_total_pct"));
    assert_eq!(csv.lines().count(), 9);
    assert_eq!(csv.lines().filter(|l| l.contains("unmeasurable")).count(), 1);
}
