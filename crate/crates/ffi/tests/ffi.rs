use qndpol_ffi::*;
use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

fn new_cavity(g1: f64, g2: f64, vs: f64, vex: f64, spin: i32) -> *mut QndCavity {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qnd_cavity_new(g1, g2, vs, vex, spin, &mut h) }, QndStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 512];
    let n = unsafe { qnd_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn response_matches_core() {
    let h = new_cavity(1.0, 0.0, 0.0, 0.2e-3, 1);
    let mut r = QndResponse::default();
    assert_eq!(unsafe { qnd_cavity_response(h, 0.0, &mut r) }, QndStatus::Ok);
    let core = qndpol::cavity::steady_state_response(&qndpol::cavity::CavityConfig::single_sided(1.0, 0.0, 0.2e-3), 0.0).unwrap();
    assert_eq!(r.f_h_re, core.f_h.re);
    assert_eq!(r.f_v_im, core.f_v.im);
    let mut s = 0.0;
    assert_eq!(unsafe { qnd_cavity_signal(h, 0.0, QndSignal::Intensity, &mut s) }, QndStatus::Ok);
    assert!(s.abs() < 1e-12);
    unsafe { qnd_cavity_free(h) };
}

#[test]
fn invalid_input_and_null_pointers() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qnd_cavity_new(0.0, 0.5, 0.0, 0.0, 1, &mut h) }, QndStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("gamma1"));
    assert_eq!(unsafe { qnd_cavity_new(0.5, 0.5, 0.0, 0.0, 3, &mut h) }, QndStatus::InvalidInput);
    assert_eq!(unsafe { qnd_cavity_new(0.5, 0.5, 0.0, 0.0, 1, ptr::null_mut()) }, QndStatus::NullPointer);
    assert_eq!(unsafe { qnd_cavity_signal(ptr::null(), 0.0, QndSignal::Phase, ptr::null_mut()) }, QndStatus::NullPointer);
    unsafe { qnd_cavity_free(ptr::null_mut()) };
}

#[test]
fn unmeasurable_and_optimum() {
    let h = new_cavity(1.0, 0.0, 0.0, 0.2e-3, 1);
    let (mut d, mut s) = (0.0, 0.0);
    assert_eq!(unsafe { qnd_cavity_optimal_detuning(h, QndSignal::Intensity, &mut d, &mut s) }, QndStatus::Unmeasurable);
    assert_eq!(unsafe { qnd_cavity_optimal_detuning(h, QndSignal::Phase, &mut d, &mut s) }, QndStatus::Ok);
    assert_eq!(d, 0.0);
    unsafe { qnd_cavity_free(h) };
}

#[test]
fn budget_functions() {
    let mut p = 0.0;
    assert_eq!(unsafe { qnd_shot_noise_error(1803312.0, 1796688.0, &mut p) }, QndStatus::Ok);
    // erfc(6624/√(2·3600000)) from an independent evaluation
    assert!((p / 4.809379849386692e-4 - 1.0).abs() < 1e-10);
    let mut t = 0.0;
    assert_eq!(unsafe { qnd_required_measurement_time(3.0, 3.0, 4e-4, &mut t) }, QndStatus::Domain);
    let mut b = QndBudget::default();
    assert_eq!(unsafe { qnd_budget_default(QndCavityKind::TwoSided, QndSignal::Intensity, 0.0, &mut b) }, QndStatus::Ok);
    assert!((b.p_total - (b.p_sn + b.p_dark + b.p_rad)).abs() < 1e-15);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qnd_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(crate_dir().join("include/qndpol.h")).unwrap();
    for f in [
        "qnd_cavity_new",
        "qnd_cavity_free",
        "qnd_cavity_response",
        "qnd_cavity_signal",
        "qnd_cavity_optimal_detuning",
        "qnd_shot_noise_error",
        "qnd_required_measurement_time",
        "qnd_budget_default",
        "qnd_last_error",
        "typedef struct QndCavity QndCavity",
    ] {
        assert!(h.contains(f), "header lacks {f}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // test binary lives in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libqndpol_ffi.a");
    lib.is_file().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        panic!("static library not found next to the test binary");
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; C link check not run");
        return;
    }
    let out_dir = std::env::temp_dir().join(format!("qndpol_ffi_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");
    let dir = crate_dir();
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(Path::new(&exe)).output().unwrap();
    assert!(run.status.success(), "smoke exited with {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("tau="));
    let _ = std::fs::remove_dir_all(&out_dir);
}
