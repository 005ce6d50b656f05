//! C ABI over the cavity response and measurement budget.
//!
//! Every fallible call returns a [`QndStatus`]; results go through out
//! pointers. The message of the last failure on the calling thread is
//! available from [`qnd_last_error`]. Handles are opaque and must be released
//! with their matching `_free` function.

use qndpol::budget::{self, BudgetParams, CavityKind, Scenario};
use qndpol::cavity::{self, CavityConfig, SignalKind, Spin};
use qndpol::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QndStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Domain = 3,
    NoConvergence = 4,
    Unmeasurable = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QndSignal {
    Phase = 0,
    Intensity = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QndCavityKind {
    SingleSided = 0,
    TwoSided = 1,
}

/// Reflected field components for a unit H-polarized drive.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QndResponse {
    pub f_h_re: f64,
    pub f_h_im: f64,
    pub f_v_re: f64,
    pub f_v_im: f64,
    pub f_plus_re: f64,
    pub f_plus_im: f64,
    pub f_minus_re: f64,
    pub f_minus_im: f64,
    /// Steady-state polaritons per unit cavity flux (ps).
    pub polaritons_per_flux: f64,
}

/// One error-budget row; probabilities are fractions, not percent.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QndBudget {
    pub tau_meas_ns: f64,
    pub p_sn: f64,
    pub p_dark: f64,
    pub p_rad: f64,
    pub p_total: f64,
    pub operating_delta_mev: f64,
    pub i_d1_per_ps: f64,
    pub i_d2_per_ps: f64,
}

/// Opaque cavity handle.
pub struct QndCavity {
    cfg: CavityConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QndStatus {
    match e {
        Error::NoConvergence { .. } => QndStatus::NoConvergence,
        Error::Domain(_) => QndStatus::Domain,
        _ => QndStatus::InvalidInput,
    }
}

fn guard<F: FnOnce() -> Result<(), QndStatus> + UnwindSafe>(f: F) -> QndStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => QndStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            QndStatus::Internal
        }
    }
}

fn lift<T>(r: qndpol::Result<T>) -> Result<T, QndStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> QndStatus {
    set_error("null pointer argument".into());
    QndStatus::NullPointer
}

fn signal_kind(s: QndSignal) -> SignalKind {
    match s {
        QndSignal::Phase => SignalKind::Phase,
        QndSignal::Intensity => SignalKind::Intensity,
    }
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length, 0 if none.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn qnd_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qnd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a cavity. `spin` is +1 or −1 (electron spin ±½). Energies in meV.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn qnd_cavity_new(
    gamma1: f64,
    gamma2: f64,
    v_s: f64,
    v_ex: f64,
    spin: i32,
    out: *mut *mut QndCavity,
) -> QndStatus {
    if out.is_null() {
        return null();
    }
    let out = unsafe { &mut *out };
    guard(std::panic::AssertUnwindSafe(|| {
        let spin = match spin {
            1 => Spin::Up,
            -1 => Spin::Down,
            s => {
                set_error(format!("spin must be +1 or -1, got {s}"));
                return Err(QndStatus::InvalidInput);
            }
        };
        let cfg = CavityConfig { gamma1, gamma2, v_s, v_ex, spin };
        lift(cfg.validate())?;
        *out = Box::into_raw(Box::new(QndCavity { cfg }));
        Ok(())
    }))
}

/// Release a handle from [`qnd_cavity_new`]; null is ignored.
///
/// # Safety
/// `h` must come from `qnd_cavity_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qnd_cavity_free(h: *mut QndCavity) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Steady-state reflection at probe detuning `delta` (meV).
///
/// # Safety
/// `h` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_cavity_response(h: *const QndCavity, delta: f64, out: *mut QndResponse) -> QndStatus {
    if h.is_null() || out.is_null() {
        return null();
    }
    let (h, out) = unsafe { (&*h, &mut *out) };
    guard(std::panic::AssertUnwindSafe(|| {
        let r = lift(cavity::steady_state_response(&h.cfg, delta))?;
        *out = QndResponse {
            f_h_re: r.f_h.re,
            f_h_im: r.f_h.im,
            f_v_re: r.f_v.re,
            f_v_im: r.f_v.im,
            f_plus_re: r.f_plus.re,
            f_plus_im: r.f_plus.im,
            f_minus_re: r.f_minus.re,
            f_minus_im: r.f_minus.im,
            polaritons_per_flux: r.polaritons_per_flux(),
        };
        Ok(())
    }))
}

/// Detector difference signal per unit input flux.
///
/// # Safety
/// `h` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_cavity_signal(h: *const QndCavity, delta: f64, kind: QndSignal, out: *mut f64) -> QndStatus {
    if h.is_null() || out.is_null() {
        return null();
    }
    let (h, out) = unsafe { (&*h, &mut *out) };
    guard(std::panic::AssertUnwindSafe(|| {
        *out = lift(cavity::signal(&h.cfg, delta, signal_kind(kind)))?;
        Ok(())
    }))
}

/// Detuning of the largest |signal| in [−3γ, 3γ]. Returns `Unmeasurable` when
/// the signal vanishes identically.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_cavity_optimal_detuning(
    h: *const QndCavity,
    kind: QndSignal,
    delta: *mut f64,
    signal: *mut f64,
) -> QndStatus {
    if h.is_null() || delta.is_null() || signal.is_null() {
        return null();
    }
    let (h, delta, signal) = unsafe { (&*h, &mut *delta, &mut *signal) };
    guard(std::panic::AssertUnwindSafe(|| {
        let o = lift(cavity::optimal_detuning(&h.cfg, signal_kind(kind)))?;
        if o.flat {
            set_error("signal vanishes for every detuning".into());
            return Err(QndStatus::Unmeasurable);
        }
        *delta = o.delta;
        *signal = o.signal;
        Ok(())
    }))
}

/// erfc(|n1 − n2|/√(2(n1 + n2))).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_shot_noise_error(n1: f64, n2: f64, out: *mut f64) -> QndStatus {
    if out.is_null() {
        return null();
    }
    let out = unsafe { &mut *out };
    guard(std::panic::AssertUnwindSafe(|| {
        *out = lift(budget::shot_noise_error(n1, n2))?;
        Ok(())
    }))
}

/// Measurement time (ns) for detector fluxes in ps⁻¹ and a target error.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_required_measurement_time(i_d1: f64, i_d2: f64, target: f64, out: *mut f64) -> QndStatus {
    if out.is_null() {
        return null();
    }
    let out = unsafe { &mut *out };
    guard(std::panic::AssertUnwindSafe(|| {
        *out = lift(budget::required_measurement_time(i_d1, i_d2, target))?;
        Ok(())
    }))
}

/// Error budget with default parameters (γ = 1 meV, V_ex = 0.2 µeV, N = 2000).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qnd_budget_default(
    cavity: QndCavityKind,
    kind: QndSignal,
    v_s: f64,
    out: *mut QndBudget,
) -> QndStatus {
    if out.is_null() {
        return null();
    }
    let out = unsafe { &mut *out };
    guard(std::panic::AssertUnwindSafe(|| {
        let sc = Scenario {
            cavity: match cavity {
                QndCavityKind::SingleSided => CavityKind::SingleSided,
                QndCavityKind::TwoSided => CavityKind::TwoSided,
            },
            signal: signal_kind(kind),
            v_s,
        };
        let r = lift(budget::evaluate_scenario(&sc, &BudgetParams::default()))?;
        let Some(b) = r.budget else {
            set_error("scenario has no signal".into());
            return Err(QndStatus::Unmeasurable);
        };
        *out = QndBudget {
            tau_meas_ns: b.tau_meas_ns,
            p_sn: b.p_sn,
            p_dark: b.p_dark,
            p_rad: b.p_rad,
            p_total: b.p_total,
            operating_delta_mev: b.operating_delta,
            i_d1_per_ps: b.i_d1,
            i_d2_per_ps: b.i_d2,
        };
        Ok(())
    }))
}
