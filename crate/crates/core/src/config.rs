//! Sectioned key = value run configuration.
//!
//! ```text
//! # comment
//! [cavity]
//! gamma1_meV = 0.5
//! ```
//!
//! Every key has a documented default; unknown sections or keys, duplicates
//! and malformed values are collected and reported together.

use crate::budget::{BudgetParams, DarkRates, DetectionChain, RadiativeForm};
use crate::cavity::{CavityConfig, Spin};
use crate::design::MirrorParams;
use crate::electronic::{BandEdge, BandProfile, GaussianEnvelopes, GridSpec, HeteroGeometry};
use crate::error::{Error, Result};
use crate::exchange::{ExchangeInputs, Kernel, MonteCarloOptions, ZReduction};
use crate::lanczos::LanczosOptions;
use crate::phonon::{DispersionParams, PhononParams};
use crate::radiative::RadiativeInputs;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

/// Directory searched for `default.conf` when no config path is given.
pub const CONFIG_DIR_ENV: &str = "QNDPOL_CONFIG_DIR";
pub const DEFAULT_CONFIG_NAME: &str = "default.conf";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    /// Non-negative integer.
    Int,
    /// A float or the word `auto`.
    FloatOrAuto,
    Choice(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub section: &'static str,
    pub name: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub doc: &'static str,
}

macro_rules! keys {
    ($( $sec:literal . $name:literal : $kind:expr => $def:literal , $doc:literal ;)*) => {
        &[$( KeySpec { section: $sec, name: $name, kind: $kind, default: $def, doc: $doc } ),*]
    };
}

use Kind::*;

pub const SCHEMA: &[KeySpec] = keys! {
    "run"."seed": Int => "2012", "seed for every stochastic step";
    "run"."threads": Int => "0", "worker threads, 0 = all cores";

    "grid"."n": Int => "101", "points per axis (odd)";
    "grid"."spacing_nm": Float => "0.5", "grid spacing";
    "grid"."states": Int => "2", "number of lowest states to solve";
    "grid"."lanczos_tol": Float => "1e-6", "residual bound per eigenpair, meV";
    "grid"."lanczos_basis": Int => "60", "Krylov basis size before restart";
    "grid"."lanczos_max_matvecs": Int => "20000", "matrix-vector product budget";

    "geometry"."qd_base_nm": Float => "20", "square dot base side";
    "geometry"."qd_height_nm": Float => "1.5", "dot height";
    "geometry"."qw_thickness_nm": Float => "6", "well thickness";
    "geometry"."barrier_nm": Float => "1", "spacer between well and dot";
    "geometry"."indium_qd": Float => "0.30", "dot indium fraction";
    "geometry"."indium_qw": Float => "0.15", "well indium fraction";

    "bands"."electron_qw_meV": FloatOrAuto => "auto", "electron well edge above the dot edge";
    "bands"."electron_barrier_meV": FloatOrAuto => "auto", "electron barrier edge above the dot edge";
    "bands"."hole_qw_meV": FloatOrAuto => "auto", "hole well edge above the dot edge";
    "bands"."hole_barrier_meV": FloatOrAuto => "auto", "hole barrier edge above the dot edge";
    "bands"."electron_mass_qd_m0": Float => "0.0504", "";
    "bands"."electron_mass_qw_m0": Float => "0.0566", "";
    "bands"."electron_mass_barrier_m0": Float => "0.067", "";
    "bands"."hole_mass_qd_m0": Float => "0.48", "";
    "bands"."hole_mass_qw_m0": Float => "0.495", "";
    "bands"."hole_mass_barrier_m0": Float => "0.51", "";

    "envelopes"."n_m_per_nm1.5": Float => "0.0216", "dot envelope amplitude";
    "envelopes"."a_nm": Float => "12", "in-plane radius";
    "envelopes"."b_nm": Float => "4.7", "z width";
    "envelopes"."z0_nm": Float => "2", "offset from the well centre";
    "envelopes"."a_b_nm": Float => "10", "exciton Bohr radius";
    "envelopes"."c1_nm": Float => "6", "electron z width in the well";
    "envelopes"."c2_nm": Float => "4", "hole z width in the well";
    "envelopes"."m1_per_nm0.5": Float => "0.4054", "electron z normalization";
    "envelopes"."m2_per_nm0.5": Float => "0.5", "hole z normalization";

    "exchange"."radius_nm": Float => "3600", "excitation spot radius";
    "exchange"."epsilon": Float => "13.2", "relative dielectric constant";
    "exchange"."exciton_fraction": Float => "0.5", "|r0|^2";
    "exchange"."z_reduction": Choice(&["derived", "product"]) => "derived", "z-integral combination";
    "exchange"."mc_samples": Int => "10000000", "Monte Carlo samples";
    "exchange"."mc_streams": Int => "16", "independent RNG streams";
    "exchange"."mc_kernel": Choice(&["exponential", "gaussian"]) => "exponential", "exciton kernel";

    "cavity"."gamma1_meV": Float => "0.5", "front-mirror decay";
    "cavity"."gamma2_meV": Float => "0.5", "back-mirror decay";
    "cavity"."v_s_meV": Float => "0", "strain half-splitting";
    "cavity"."v_ex_meV": Float => "0.0002", "exchange energy";
    "cavity"."spin": Choice(&["up", "down"]) => "up", "dot electron spin";
    "cavity"."sweep_min_meV": Float => "-2", "";
    "cavity"."sweep_max_meV": Float => "2", "";
    "cavity"."sweep_points": Int => "801", "";

    "phonon"."sound_velocity_nm_per_ps": Float => "4.7", "";
    "phonon"."density_g_per_cm3": Float => "5.3", "";
    "phonon"."a_e_eV": Float => "-7", "electron deformation potential";
    "phonon"."a_h_eV": Float => "2.7", "hole deformation potential";
    "phonon"."temperature_K": Float => "1.5", "";
    "phonon"."rabi_meV": Float => "2", "vacuum Rabi splitting";
    "phonon"."cavity_mass_m0": Float => "3.24e-5", "in-plane photon mass";
    "phonon"."exciton_energy_meV": Float => "1350.6", "";
    "phonon"."cavity_detuning_meV": Float => "0", "E_cav(0) - E_exc(0)";
    "phonon"."probe_delta_meV": Float => "0", "probe detuning below the LP";
    "phonon"."rel_tol": Float => "1e-6", "quadrature tolerance";

    "radiative"."refractive_index": Float => "3.5", "";
    "radiative"."tau0_exciton_ps": Float => "23", "free-exciton lifetime";

    "detection"."bs_to_cavity": Float => "0.1", "";
    "detection"."bs_to_detectors": Float => "0.9", "";
    "detection"."detector_efficiency": Float => "1", "";

    "budget"."gamma_meV": Float => "1", "total cavity decay for the table";
    "budget"."v_ex_meV": Float => "0.0002", "";
    "budget"."v_s_meV": Float => "0.15", "strain splitting of the strained rows";
    "budget"."n_polaritons": Float => "2000", "steady-state polariton number";
    "budget"."target_p_sn": Float => "4e-4", "shot-noise error target";
    "budget"."tau0_s": Float => "0.39", "radiative lifetime per polariton";
    "budget"."radiative_form": Choice(&["linear", "exponential"]) => "linear", "";
    "budget"."dark_rates": Choice(&["fixed", "computed"]) => "fixed", "per-polariton spin-flip rates";
    "budget"."dark_rate_single_per_s": Float => "30", "used when dark_rates = fixed";
    "budget"."dark_rate_two_per_s": Float => "0.2", "used when dark_rates = fixed";
    "budget"."two_sided_probe_delta_meV": Float => "0.3", "used when dark_rates = computed";

    "mirrors"."r1": Float => "0.999", "";
    "mirrors"."r2": Float => "0.999", "";
    "mirrors"."l_c_nm": Float => "100", "effective cavity length";
    "mirrors"."n_c": Float => "3.5", "";
    "mirrors"."lambda_nm": Float => "918", "vacuum wavelength";
};

fn spec_for(full: &str) -> Option<&'static KeySpec> {
    SCHEMA.iter().find(|k| format!("{}.{}", k.section, k.name) == full)
}

fn check_value(spec: &KeySpec, v: &str) -> std::result::Result<(), String> {
    let ok = match spec.kind {
        Float => v.parse::<f64>().map(|x| x.is_finite()).unwrap_or(false),
        Int => v.parse::<u64>().is_ok() || v.parse::<f64>().map(|x| x >= 0.0 && x.fract() == 0.0 && x < 1.8e19).unwrap_or(false),
        FloatOrAuto => v == "auto" || v.parse::<f64>().map(|x| x.is_finite()).unwrap_or(false),
        Choice(c) => c.contains(&v),
    };
    if ok {
        Ok(())
    } else {
        let want = match spec.kind {
            Float => "a finite number".to_string(),
            Int => "a non-negative integer".to_string(),
            FloatOrAuto => "a number or 'auto'".to_string(),
            Choice(c) => format!("one of {}", c.join(", ")),
        };
        Err(format!("{}.{}: expected {want}, got '{v}'", spec.section, spec.name))
    }
}

/// Resolved configuration: every schema key has a value.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
    /// Keys set explicitly (file or override) rather than defaulted.
    explicit: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        let values = SCHEMA.iter().map(|k| (format!("{}.{}", k.section, k.name), k.default.to_string())).collect();
        Self { values, explicit: BTreeMap::new() }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut errors = Vec::new();
        let mut section: Option<String> = None;
        let mut seen = std::collections::BTreeSet::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = no + 1;
            if let Some(rest) = line.strip_prefix('[') {
                match rest.strip_suffix(']') {
                    Some(name) if SCHEMA.iter().any(|k| k.section == name.trim()) => section = Some(name.trim().to_string()),
                    Some(name) => {
                        errors.push(format!("line {at}: unknown section [{}]", name.trim()));
                        section = None;
                    }
                    None => errors.push(format!("line {at}: malformed section header '{line}'")),
                }
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                errors.push(format!("line {at}: expected key = value, got '{line}'"));
                continue;
            };
            let (k, v) = (k.trim(), v.trim());
            let Some(sec) = section.as_deref() else {
                errors.push(format!("line {at}: key '{k}' outside a known section"));
                continue;
            };
            let full = format!("{sec}.{k}");
            if !seen.insert(full.clone()) {
                errors.push(format!("line {at}: duplicate key {full}"));
                continue;
            }
            if let Err(e) = cfg.set(&full, v) {
                errors.push(format!("line {at}: {e}"));
            }
        }
        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(Error::Config(errors.join("\n")))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Explicit path, else `$QNDPOL_CONFIG_DIR/default.conf` if present, else built-in defaults.
    pub fn resolve(path: Option<&Path>) -> Result<(Self, Option<PathBuf>)> {
        if let Some(p) = path {
            return Ok((Self::load(p)?, Some(p.to_path_buf())));
        }
        if let Ok(dir) = std::env::var(CONFIG_DIR_ENV) {
            let p = Path::new(&dir).join(DEFAULT_CONFIG_NAME);
            if p.is_file() {
                return Ok((Self::load(&p)?, Some(p)));
            }
        }
        Ok((Self::default(), None))
    }

    /// Set `section.key`, validating the key and value.
    pub fn set(&mut self, full: &str, value: &str) -> std::result::Result<(), String> {
        let spec = spec_for(full).ok_or_else(|| format!("unknown key {full}"))?;
        check_value(spec, value)?;
        self.values.insert(full.to_string(), value.to_string());
        self.explicit.insert(full.to_string(), value.to_string());
        Ok(())
    }

    /// Apply `section.key=value` overrides, aggregating errors.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, items: &[S]) -> Result<()> {
        let mut errors = Vec::new();
        for it in items {
            let it = it.as_ref();
            match it.split_once('=') {
                Some((k, v)) => {
                    if let Err(e) = self.set(k.trim(), v.trim()) {
                        errors.push(e);
                    }
                }
                None => errors.push(format!("override '{it}' is not key=value")),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errors.join("\n")))
        }
    }

    pub fn raw(&self, full: &str) -> &str {
        self.values.get(full).map(String::as_str).unwrap_or_else(|| panic!("schema key {full} missing"))
    }

    pub fn f64(&self, full: &str) -> f64 {
        self.raw(full).parse().unwrap_or_else(|_| panic!("{full} was validated as a number"))
    }

    pub fn u64(&self, full: &str) -> u64 {
        let r = self.raw(full);
        r.parse::<u64>().unwrap_or_else(|_| r.parse::<f64>().expect("validated integer") as u64)
    }

    pub fn usize(&self, full: &str) -> usize {
        self.u64(full) as usize
    }

    pub fn auto_f64(&self, full: &str) -> Option<f64> {
        match self.raw(full) {
            "auto" => None,
            v => Some(v.parse().expect("validated number")),
        }
    }

    pub fn is_explicit(&self, full: &str) -> bool {
        self.explicit.contains_key(full)
    }

    /// Full resolved config in schema order, parseable by [`Config::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut current = "";
        for k in SCHEMA {
            if k.section != current {
                if !current.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("[{}]\n", k.section));
                current = k.section;
            }
            let full = format!("{}.{}", k.section, k.name);
            if k.doc.is_empty() {
                out.push_str(&format!("{} = {}\n", k.name, self.raw(&full)));
            } else {
                out.push_str(&format!("{} = {}  # {}\n", k.name, self.raw(&full), k.doc));
            }
        }
        out
    }

    pub fn seed(&self) -> u64 {
        self.u64("run.seed")
    }

    pub fn threads(&self) -> usize {
        self.usize("run.threads")
    }

    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.usize("grid.n"), self.f64("grid.spacing_nm"))
    }

    pub fn lanczos(&self) -> LanczosOptions {
        LanczosOptions {
            max_iter: self.usize("grid.lanczos_max_matvecs"),
            tol: self.f64("grid.lanczos_tol"),
            basis: self.usize("grid.lanczos_basis"),
            seed: self.seed(),
        }
    }

    pub fn geometry(&self) -> HeteroGeometry {
        HeteroGeometry {
            qd_base: self.f64("geometry.qd_base_nm"),
            qd_height: self.f64("geometry.qd_height_nm"),
            qw_thickness: self.f64("geometry.qw_thickness_nm"),
            barrier_thickness: self.f64("geometry.barrier_nm"),
            indium_qd: self.f64("geometry.indium_qd"),
            indium_qw: self.f64("geometry.indium_qw"),
        }
    }

    pub fn bands(&self) -> BandProfile {
        let mut b = BandProfile::from_composition(&self.geometry());
        let edge = |e: &mut BandEdge, key: &str, mass: &str| {
            if let Some(v) = self.auto_f64(key) {
                e.potential = v;
            }
            e.mass = self.f64(mass);
        };
        b.electron.qd.mass = self.f64("bands.electron_mass_qd_m0");
        b.hole.qd.mass = self.f64("bands.hole_mass_qd_m0");
        edge(&mut b.electron.qw, "bands.electron_qw_meV", "bands.electron_mass_qw_m0");
        edge(&mut b.electron.barrier, "bands.electron_barrier_meV", "bands.electron_mass_barrier_m0");
        edge(&mut b.hole.qw, "bands.hole_qw_meV", "bands.hole_mass_qw_m0");
        edge(&mut b.hole.barrier, "bands.hole_barrier_meV", "bands.hole_mass_barrier_m0");
        b
    }

    pub fn envelopes(&self) -> GaussianEnvelopes {
        GaussianEnvelopes {
            n_m: self.f64("envelopes.n_m_per_nm1.5"),
            a: self.f64("envelopes.a_nm"),
            b: self.f64("envelopes.b_nm"),
            z0: self.f64("envelopes.z0_nm"),
            a_b: self.f64("envelopes.a_b_nm"),
            c1: self.f64("envelopes.c1_nm"),
            c2: self.f64("envelopes.c2_nm"),
            m1: self.f64("envelopes.m1_per_nm0.5"),
            m2: self.f64("envelopes.m2_per_nm0.5"),
        }
    }

    pub fn area(&self) -> f64 {
        let r = self.f64("exchange.radius_nm");
        PI * r * r
    }

    pub fn exchange_inputs(&self) -> ExchangeInputs {
        ExchangeInputs {
            envelopes: self.envelopes(),
            area: self.area(),
            epsilon: self.f64("exchange.epsilon"),
            hopfield_exciton_sq: self.f64("exchange.exciton_fraction"),
            reduction: match self.raw("exchange.z_reduction") {
                "product" => ZReduction::Product,
                _ => ZReduction::Derived,
            },
        }
    }

    pub fn monte_carlo(&self) -> MonteCarloOptions {
        MonteCarloOptions {
            samples: self.u64("exchange.mc_samples"),
            seed: self.seed(),
            streams: self.u64("exchange.mc_streams").min(u32::MAX as u64) as u32,
            kernel: match self.raw("exchange.mc_kernel") {
                "gaussian" => Kernel::Gaussian,
                _ => Kernel::Exponential,
            },
            ..MonteCarloOptions::default()
        }
    }

    pub fn cavity(&self) -> CavityConfig {
        CavityConfig {
            gamma1: self.f64("cavity.gamma1_meV"),
            gamma2: self.f64("cavity.gamma2_meV"),
            v_s: self.f64("cavity.v_s_meV"),
            v_ex: self.f64("cavity.v_ex_meV"),
            spin: if self.raw("cavity.spin") == "down" { Spin::Down } else { Spin::Up },
        }
    }

    pub fn phonon(&self) -> PhononParams {
        PhononParams {
            sound_velocity: self.f64("phonon.sound_velocity_nm_per_ps"),
            density: PhononParams::density_from_g_per_cm3(self.f64("phonon.density_g_per_cm3")),
            a_e: self.f64("phonon.a_e_eV"),
            a_h: self.f64("phonon.a_h_eV"),
            temperature: self.f64("phonon.temperature_K"),
        }
    }

    pub fn dispersion(&self) -> DispersionParams {
        let me = self.f64("bands.electron_mass_qw_m0");
        let mh = self.f64("bands.hole_mass_qw_m0");
        DispersionParams {
            rabi_g: self.f64("phonon.rabi_meV"),
            exciton_mass: me + mh,
            cavity_mass: self.f64("phonon.cavity_mass_m0"),
            detuning: self.f64("phonon.cavity_detuning_meV"),
            exciton_energy: self.f64("phonon.exciton_energy_meV"),
            electron_mass: me,
            hole_mass: mh,
        }
    }

    pub fn radiative(&self) -> RadiativeInputs {
        RadiativeInputs {
            envelopes: self.envelopes(),
            refractive_index: self.f64("radiative.refractive_index"),
            exciton_energy: self.f64("phonon.exciton_energy_meV"),
            tau0_exciton: self.f64("radiative.tau0_exciton_ps"),
            area: self.area(),
        }
    }

    pub fn detection(&self) -> DetectionChain {
        DetectionChain {
            bs_to_cavity: self.f64("detection.bs_to_cavity"),
            bs_to_detectors: self.f64("detection.bs_to_detectors"),
            detector_efficiency: self.f64("detection.detector_efficiency"),
            ..DetectionChain::default()
        }
    }

    pub fn dark_rates_computed(&self) -> bool {
        self.raw("budget.dark_rates") == "computed"
    }

    /// Budget parameters with the fixed per-polariton dark rates.
    pub fn budget(&self) -> BudgetParams {
        BudgetParams {
            gamma: self.f64("budget.gamma_meV"),
            v_ex: self.f64("budget.v_ex_meV"),
            n_polaritons: self.f64("budget.n_polaritons"),
            rabi_splitting: self.f64("phonon.rabi_meV"),
            target_p_sn: self.f64("budget.target_p_sn"),
            chain: self.detection(),
            dark_rates: DarkRates {
                single_sided: self.f64("budget.dark_rate_single_per_s"),
                two_sided: self.f64("budget.dark_rate_two_per_s"),
            },
            tau0_s: self.f64("budget.tau0_s"),
            radiative_form: if self.raw("budget.radiative_form") == "exponential" {
                RadiativeForm::Exponential
            } else {
                RadiativeForm::Linear
            },
        }
    }

    pub fn mirrors(&self) -> MirrorParams {
        MirrorParams {
            r1: self.f64("mirrors.r1"),
            r2: self.f64("mirrors.r2"),
            l_c: self.f64("mirrors.l_c_nm"),
            n_c: self.f64("mirrors.n_c"),
            lambda: self.f64("mirrors.lambda_nm"),
        }
    }

    /// Cross-field checks for everything the subcommands consume, aggregated.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let mut push = |r: Result<()>| {
            if let Err(e) = r {
                errors.push(e.to_string());
            }
        };
        push(self.grid().map(|_| ()));
        push(self.geometry().validate());
        push(self.bands().validate());
        push(self.exchange_inputs().validate());
        push(self.cavity().validate());
        push(self.dispersion().validate());
        push(self.radiative().validate());
        push(self.budget().validate());
        if self.u64("exchange.mc_samples") < 2 || self.u64("exchange.mc_streams") == 0 {
            errors.push("exchange.mc_samples must be >= 2 and mc_streams >= 1".into());
        }
        if self.usize("grid.states") == 0 {
            errors.push("grid.states must be >= 1".into());
        }
        if self.usize("cavity.sweep_points") < 2 || !(self.f64("cavity.sweep_max_meV") > self.f64("cavity.sweep_min_meV")) {
            errors.push("cavity sweep needs >= 2 points and sweep_max_meV > sweep_min_meV".into());
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errors.join("\n")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_all_defaults() {
        let c = Config::parse("").unwrap();
        assert_eq!(c, Config::default());
        c.validate().unwrap();
        assert_eq!(c.envelopes(), GaussianEnvelopes::default());
        assert_eq!(c.bands(), BandProfile::default());
    }

    #[test]
    fn round_trip_through_text() {
        let mut c = Config::default();
        c.set("cavity.v_s_meV", "0.15").unwrap();
        let back = Config::parse(&c.to_text()).unwrap();
        assert_eq!(back.values, c.values);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_aggregated() {
        let text = "[cavity]\ngamma1_meV = x\nbogus = 1\n[nope]\na = 1\n[grid]\nn = 3\nn = 5\n";
        let Err(Error::Config(msg)) = Config::parse(text) else { panic!("expected config error") };
        assert!(msg.contains("gamma1_meV"));
        assert!(msg.contains("unknown key cavity.bogus"));
        assert!(msg.contains("unknown section [nope]"));
        assert!(msg.contains("duplicate key grid.n"));
    }

    #[test]
    fn overrides_win() {
        let mut c = Config::parse("[cavity]\nv_s_meV = 0.1\n").unwrap();
        c.apply_overrides(&["cavity.v_s_meV=0.2"]).unwrap();
        assert_eq!(c.f64("cavity.v_s_meV"), 0.2);
        assert!(c.apply_overrides(&["cavity.nothing=1"]).is_err());
    }

    #[test]
    fn validation_catches_cross_field_errors() {
        let c = Config::parse("[grid]\nn = 4\n[cavity]\ngamma1_meV = -1\n").unwrap();
        let Err(Error::Config(msg)) = c.validate() else { panic!() };
        assert_eq!(msg.lines().count(), 2);
    }

    #[test]
    fn band_override() {
        let c = Config::parse("[bands]\nelectron_qw_meV = 220\n").unwrap();
        assert_eq!(c.bands().electron.qw.potential, 220.0);
    }
}
