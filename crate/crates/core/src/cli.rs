//! Command-line front end: config resolution, subcommand pipelines, CSV and
//! run-manifest output.

use crate::budget::{build_table1, evaluate_scenario, table_to_csv, CavityKind, DarkRates, Scenario};
use crate::cavity::{dressed_modes, optimal_detuning, sweep, CavityConfig, SignalKind};
use crate::config::Config;
use crate::design::{decay_rates, implied_lengths, spot_radius};
use crate::electronic::{
    emission_wavelengths, fit_gaussian_envelope, solve_states, well_confinement, Binding, Confinement, Gaps, Particle,
};
use crate::error::Result;
use crate::exchange::{exchange_brute_force, exchange_closed_form, ExchangeInputs, ZReduction};
use crate::phonon::{density_check, phonon_absorption_rate};
use crate::radiative::{dipole_overlap_direct, p_rad, p_rad_linear, radiative_lifetime, radiative_lifetime_with_overlap};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "qndpol", version, about = "Polariton-based spin readout: solvers, cavity response and error budget")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Config file; defaults to $QNDPOL_CONFIG_DIR/default.conf, then built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override a config key, e.g. --set cavity.v_s_meV=0.15 (repeatable).
    #[arg(long = "set", global = true, value_name = "SECTION.KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Seed for all stochastic steps (overrides run.seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker thread cap, 0 = all cores (overrides run.threads).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParticleArg {
    Electron,
    Hole,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CavityArg {
    Single,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalArg {
    Phase,
    Intensity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest dot/well states, energies and emission wavelengths.
    Solve {
        #[arg(long, value_enum, default_value = "both")]
        particle: ParticleArg,
        /// Grid points per axis (overrides grid.n).
        #[arg(long)]
        n: Option<usize>,
        /// Grid spacing in nm (overrides grid.spacing_nm).
        #[arg(long)]
        spacing: Option<f64>,
        /// Also write the full 3D ground state (large).
        #[arg(long)]
        dump_3d: bool,
    },
    /// Solve the electron ground state and fit the Gaussian envelope in the well.
    Envelope {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        spacing: Option<f64>,
    },
    /// Exchange energy: closed forms and optionally the Monte Carlo estimate.
    Exchange {
        #[arg(long)]
        mc: bool,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Phase and intensity signals for both spins over a detuning range.
    Sweep,
    /// Phonon-assisted spin-flip rate into the dark states.
    SpinflipRate {
        /// Probe detuning below the LP, meV (overrides phonon.probe_delta_meV).
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        temperature: Option<f64>,
    },
    /// Radiative overlap, lifetime and error probability.
    Radiative {
        /// Measurement time, ns.
        #[arg(long, default_value_t = 10.0)]
        tau_meas: f64,
    },
    /// Error budget for one scenario at its optimal detuning.
    Budget {
        #[arg(long, value_enum, default_value = "single")]
        cavity: CavityArg,
        #[arg(long, value_enum, default_value = "phase")]
        signal: SignalArg,
        /// Strain half-splitting, meV.
        #[arg(long, default_value_t = 0.0)]
        vs: f64,
    },
    /// Measurement-time and error table for all eight scenarios.
    Table1,
    /// Mirror decay rates and spot radius.
    Cavity {
        #[arg(long)]
        r1: Option<f64>,
        #[arg(long)]
        r2: Option<f64>,
        /// Effective cavity length, nm.
        #[arg(long)]
        lc: Option<f64>,
        #[arg(long)]
        nc: Option<f64>,
        /// Vacuum wavelength, nm.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Response sweeps for both cavities (unstrained and strained) and the table.
    ReproduceAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Envelope { .. } => "envelope",
            Command::Exchange { .. } => "exchange",
            Command::Sweep => "sweep",
            Command::SpinflipRate { .. } => "spinflip-rate",
            Command::Radiative { .. } => "radiative",
            Command::Budget { .. } => "budget",
            Command::Table1 => "table1",
            Command::Cavity { .. } => "cavity",
            Command::ReproduceAll => "reproduce-all",
        }
    }

    /// Subcommand flags expressed as config overrides.
    fn overrides(&self) -> Vec<String> {
        let mut o = Vec::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                o.push(format!("{k}={v}"));
            }
        };
        match self {
            Command::Solve { n, spacing, .. } | Command::Envelope { n, spacing } => {
                put("grid.n", n.map(|v| v.to_string()));
                put("grid.spacing_nm", spacing.map(|v| v.to_string()));
            }
            Command::Exchange { samples, .. } => put("exchange.mc_samples", samples.map(|v| v.to_string())),
            Command::SpinflipRate { delta, temperature } => {
                put("phonon.probe_delta_meV", delta.map(|v| v.to_string()));
                put("phonon.temperature_K", temperature.map(|v| v.to_string()));
            }
            Command::Cavity { r1, r2, lc, nc, lambda } => {
                put("mirrors.r1", r1.map(|v| v.to_string()));
                put("mirrors.r2", r2.map(|v| v.to_string()));
                put("mirrors.l_c_nm", lc.map(|v| v.to_string()));
                put("mirrors.n_c", nc.map(|v| v.to_string()));
                put("mirrors.lambda_nm", lambda.map(|v| v.to_string()));
            }
            _ => {}
        }
        o
    }
}

/// Files produced by one run, relative to the output directory.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub files: Vec<(String, String)>,
    pub notes: Vec<String>,
}

impl RunOutput {
    fn add(&mut self, name: &str, content: String) {
        self.files.push((name.to_string(), content));
    }
}

/// Resolve config: file (or default), then `--set`, then dedicated flags.
pub fn resolve_config(global: &GlobalArgs, cmd: &Command) -> Result<(Config, Option<PathBuf>)> {
    let (mut cfg, path) = Config::resolve(global.config.as_deref())?;
    cfg.apply_overrides(&global.overrides)?;
    let mut flags = cmd.overrides();
    if let Some(s) = global.seed {
        flags.push(format!("run.seed={s}"));
    }
    if let Some(t) = global.threads {
        flags.push(format!("run.threads={t}"));
    }
    cfg.apply_overrides(&flags)?;
    cfg.validate()?;
    Ok((cfg, path))
}

fn fmt_row(vals: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{v:.12e}");
    }
    s
}

fn solve_particle(cfg: &Config, p: Particle) -> Result<crate::electronic::EigenSolution> {
    solve_states(cfg.grid()?, &cfg.geometry(), &cfg.bands(), p, cfg.usize("grid.states"), &cfg.lanczos())
}

fn particle_name(p: Particle) -> &'static str {
    match p {
        Particle::Electron => "electron",
        Particle::HeavyHole => "hole",
    }
}

fn run_solve(cfg: &Config, which: ParticleArg, dump_3d: bool, out: &mut RunOutput) -> Result<()> {
    let particles: Vec<Particle> = match which {
        ParticleArg::Electron => vec![Particle::Electron],
        ParticleArg::Hole => vec![Particle::HeavyHole],
        ParticleArg::Both => vec![Particle::Electron, Particle::HeavyHole],
    };
    let mut csv = String::from("particle,state,energy_meV,residual_meV,matvecs\n");
    let mut ground = Vec::new();
    for p in particles {
        let sol = solve_particle(cfg, p)?;
        for (i, e) in sol.energies.iter().enumerate() {
            let _ = writeln!(csv, "{},{i},{e:.12e},{:.3e},{}", particle_name(p), sol.residual_norms[i], sol.iterations_used);
        }
        out.add(&format!("psi_{}_0_xz.csv", particle_name(p)), sol.states[0].xz_slice_csv());
        if dump_3d {
            out.add(&format!("psi_{}_0.csv", particle_name(p)), sol.states[0].to_csv());
        }
        if sol.energies.len() > 1 {
            out.notes.push(format!("{}: E1 - E0 = {:.4} meV", particle_name(p), sol.energies[1] - sol.energies[0]));
        }
        ground.push((p, sol.energies[0]));
    }
    out.add("solve.csv", csv);
    if ground.len() == 2 {
        let (geom, bands) = (cfg.geometry(), cfg.bands());
        let dz = 0.05;
        let well = Confinement {
            electron: well_confinement(&geom, &bands, Particle::Electron, dz)?,
            hole: well_confinement(&geom, &bands, Particle::HeavyHole, dz)?,
        };
        let dot = Confinement { electron: ground[0].1, hole: ground[1].1 };
        let em = emission_wavelengths(dot, well, Gaps::from_composition(&geom), Binding::default())?;
        let mut s = String::from("dot_trion_nm,well_exciton_nm,trion_energy_meV,exciton_energy_meV,detuning_meV\n");
        let _ = writeln!(
            s,
            "{}",
            fmt_row(&[em.qd_trion_nm, em.qw_exciton_nm, em.trion_energy_mev, em.exciton_energy_mev, em.detuning_mev])
        );
        out.add("emission.csv", s);
    }
    Ok(())
}

fn run_envelope(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let sol = solve_particle(cfg, Particle::Electron)?;
    let (lo, hi) = cfg.geometry().qw_z();
    let fit = fit_gaussian_envelope(&sol.states[0], lo, hi)?;
    let mut s = String::from("n_m_nm^-3/2,a_nm,b_nm,z0_nm,rms_nm^-3/2,points,slab_weight,ground_energy_meV\n");
    let _ = writeln!(
        s,
        "{:.12e},{:.12e},{:.12e},{:.12e},{:.6e},{},{:.9e},{:.12e}",
        fit.n_m, fit.a, fit.b, fit.z0, fit.rms, fit.points, fit.slab_weight, sol.energies[0]
    );
    out.add("envelope.csv", s);
    Ok(())
}

fn run_exchange(cfg: &Config, mc: bool, out: &mut RunOutput) -> Result<()> {
    let base = cfg.exchange_inputs();
    let mut s = String::from("method,z_reduction,v_ex_ueV,stderr_ueV,lambda_nm,i1_nm^1/2,i2_nm^1/2,samples\n");
    let reductions = [("derived", ZReduction::Derived), ("product", ZReduction::Product)];
    for (name, red) in reductions {
        let inp = ExchangeInputs { reduction: red, ..base };
        let r = exchange_closed_form(&inp)?;
        let _ = writeln!(s, "closed_form,{name},{:.12e},0,{:.12e},{:.12e},{:.12e},0", r.v_ex, r.lambda, r.i1, r.i2);
    }
    if mc {
        let r = exchange_brute_force(&base, &cfg.monte_carlo())?;
        let name = cfg.raw("exchange.z_reduction");
        let _ = writeln!(
            s,
            "monte_carlo_{},{name},{:.12e},{:.6e},{:.12e},{:.12e},{:.12e},{}",
            cfg.raw("exchange.mc_kernel"),
            r.v_ex,
            r.stderr,
            r.lambda,
            r.i1,
            r.i2,
            r.samples
        );
    }
    out.add("exchange.csv", s);
    let n = cfg.f64("budget.n_polaritons");
    let d = density_check(n, cfg.f64("exchange.radius_nm"), cfg.f64("envelopes.a_b_nm"), 0.1)?;
    let mut s = String::from("n_polaritons,radius_nm,density_cm^-2,n_aB2,dilute\n");
    let _ = writeln!(s, "{n},{},{:.9e},{:.9e},{}", cfg.f64("exchange.radius_nm"), d.density, d.n_ab2, d.pass);
    out.add("density.csv", s);
    Ok(())
}

fn sweep_csv(cfg: &CavityConfig, lo: f64, hi: f64, n: usize) -> Result<String> {
    Ok(sweep(cfg, lo, hi, n)?.to_csv())
}

fn run_sweep(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let c = cfg.cavity();
    out.add(
        "sweep.csv",
        sweep_csv(&c, cfg.f64("cavity.sweep_min_meV"), cfg.f64("cavity.sweep_max_meV"), cfg.usize("cavity.sweep_points"))?,
    );
    let mut s = String::from("signal,optimal_delta_meV,signal_per_input_flux,flat\n");
    for kind in [SignalKind::Phase, SignalKind::Intensity] {
        let o = optimal_detuning(&c, kind)?;
        let _ = writeln!(s, "{},{:.12e},{:.12e},{}", kind.name(), o.delta, o.signal, o.flat);
    }
    out.add("optima.csv", s);
    if c.v_s != 0.0 {
        let m = dressed_modes(&c)?;
        let mut s = String::from("mode,eigen_detuning_re_meV,eigen_detuning_im_meV,j_plus_fraction\n");
        for i in 0..2 {
            let e = m.eigen_detunings[i];
            let _ = writeln!(s, "{i},{:.12e},{:.12e},{:.12e}", e.re, e.im, m.j_plus_fraction[i]);
        }
        out.add("dressed_modes.csv", s);
    }
    Ok(())
}

/// Per-polariton rates for the single-sided (δ = 0) and two-sided probe detunings.
pub fn computed_dark_rates(cfg: &Config) -> Result<DarkRates> {
    let (ph, env, disp) = (cfg.phonon(), cfg.envelopes(), cfg.dispersion());
    let tol = cfg.f64("phonon.rel_tol");
    let single = phonon_absorption_rate(0.0, &ph, &env, &disp, tol)?.gamma_per_polariton;
    let two = phonon_absorption_rate(cfg.f64("budget.two_sided_probe_delta_meV"), &ph, &env, &disp, tol)?.gamma_per_polariton;
    Ok(DarkRates { single_sided: single, two_sided: two })
}

fn run_spinflip(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let delta = cfg.f64("phonon.probe_delta_meV");
    let (ph, env, disp) = (cfg.phonon(), cfg.envelopes(), cfg.dispersion());
    let r = phonon_absorption_rate(delta, &ph, &env, &disp, cfg.f64("phonon.rel_tol"))?;
    let b = cfg.budget();
    let n_up = b.upper_population(delta);
    let mut s = String::from(
        "probe_delta_meV,temperature_K,gamma_per_polariton_per_s,k_threshold_per_nm,n_lp,n_up,gamma_dark_total_per_s,max_energy_residual_meV\n",
    );
    let _ = writeln!(
        s,
        "{delta},{},{:.12e},{:.12e},{},{:.9e},{:.12e},{:.3e}",
        ph.temperature,
        r.gamma_per_polariton,
        r.k_threshold,
        b.n_polaritons,
        n_up,
        r.gamma_dark_total(b.n_polaritons, n_up),
        r.max_energy_residual
    );
    out.add("spinflip.csv", s);
    let mut s = String::from("k_per_nm,integrand\n");
    for (k, v) in &r.samples {
        let _ = writeln!(s, "{k:.12e},{v:.12e}");
    }
    out.add("spinflip_integrand.csv", s);
    Ok(())
}

fn run_radiative(cfg: &Config, tau_meas: f64, out: &mut RunOutput) -> Result<()> {
    let inp = cfg.radiative();
    let closed = radiative_lifetime(&inp)?;
    let direct_overlap = dipole_overlap_direct(&inp.envelopes, inp.area)?;
    let direct = radiative_lifetime_with_overlap(&inp, direct_overlap)?;
    let n = cfg.f64("budget.n_polaritons");
    let tau0 = cfg.f64("budget.tau0_s");
    let mut s = String::from("method,overlap_nm,tau_d_s,tau_d_per_n_s,tau_meas_ns,tau0_s,p_rad_exact,p_rad_linear\n");
    for (name, l) in [("closed_form", closed), ("direct_integration", direct)] {
        let _ = writeln!(
            s,
            "{name},{:.12e},{:.12e},{:.12e},{tau_meas},{tau0},{:.12e},{:.12e}",
            l.overlap,
            l.tau_d,
            l.per_excitons(n),
            p_rad(n, tau_meas, tau0)?,
            p_rad_linear(n, tau_meas, tau0)
        );
    }
    out.add("radiative.csv", s);
    Ok(())
}

fn budget_params(cfg: &Config, out: &mut RunOutput) -> Result<crate::budget::BudgetParams> {
    let mut p = cfg.budget();
    if cfg.dark_rates_computed() {
        p.dark_rates = computed_dark_rates(cfg)?;
        out.notes.push(format!(
            "computed dark rates: single-sided {:.6e} /s, two-sided {:.6e} /s per polariton",
            p.dark_rates.single_sided, p.dark_rates.two_sided
        ));
    }
    Ok(p)
}

fn run_budget(cfg: &Config, cavity: CavityArg, signal: SignalArg, vs: f64, out: &mut RunOutput) -> Result<()> {
    let p = budget_params(cfg, out)?;
    let sc = Scenario {
        cavity: match cavity {
            CavityArg::Single => CavityKind::SingleSided,
            CavityArg::Two => CavityKind::TwoSided,
        },
        signal: match signal {
            SignalArg::Phase => SignalKind::Phase,
            SignalArg::Intensity => SignalKind::Intensity,
        },
        v_s: vs,
    };
    let r = evaluate_scenario(&sc, &p)?;
    out.add("budget.csv", table_to_csv(&[r]));
    Ok(())
}

fn run_table1(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let p = budget_params(cfg, out)?;
    let rows = build_table1(&Scenario::standard_set(cfg.f64("budget.v_s_meV")), &p)?;
    out.add("table1.csv", table_to_csv(&rows));
    Ok(())
}

fn run_cavity(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let m = cfg.mirrors();
    let g = decay_rates(&m)?;
    let r = spot_radius(&m)?;
    let (lg, lr) = implied_lengths(&m, cfg.f64("cavity.gamma1_meV"), cfg.f64("exchange.radius_nm"))?;
    let mut s = String::from(
        "r1,r2,l_c_nm,n_c,lambda_nm,gamma1_meV,gamma2_meV,tau1_ps,tau2_ps,spot_radius_nm,l_c_for_gamma1_nm,l_c_for_radius_nm\n",
    );
    let _ = writeln!(
        s,
        "{},{},{},{},{},{}",
        m.r1,
        m.r2,
        m.l_c,
        m.n_c,
        m.lambda,
        fmt_row(&[g.gamma1, g.gamma2, g.tau1, g.tau2, r, lg, lr])
    );
    out.add("cavity.csv", s);
    Ok(())
}

fn run_reproduce_all(cfg: &Config, out: &mut RunOutput) -> Result<()> {
    let gamma = cfg.f64("budget.gamma_meV");
    let v_ex = cfg.f64("budget.v_ex_meV");
    let v_s = cfg.f64("budget.v_s_meV");
    let (lo, hi, n) = (cfg.f64("cavity.sweep_min_meV"), cfg.f64("cavity.sweep_max_meV"), cfg.usize("cavity.sweep_points"));
    for (label, vs) in [("unstrained", 0.0), ("strained", v_s)] {
        for kind in [CavityKind::TwoSided, CavityKind::SingleSided] {
            let c = kind.config(gamma, vs, v_ex);
            out.add(&format!("response_{label}_{}.csv", kind.name()), sweep_csv(&c, lo, hi, n)?);
        }
    }
    run_table1(cfg, out)?;
    run_cavity(cfg, out)?;
    run_radiative(cfg, 10.0, out)?;
    run_exchange(cfg, false, out)
}

pub fn execute(cfg: &Config, cmd: &Command) -> Result<RunOutput> {
    let mut out = RunOutput::default();
    match cmd {
        Command::Solve { particle, dump_3d, .. } => run_solve(cfg, *particle, *dump_3d, &mut out)?,
        Command::Envelope { .. } => run_envelope(cfg, &mut out)?,
        Command::Exchange { mc, .. } => run_exchange(cfg, *mc, &mut out)?,
        Command::Sweep => run_sweep(cfg, &mut out)?,
        Command::SpinflipRate { .. } => run_spinflip(cfg, &mut out)?,
        Command::Radiative { tau_meas } => run_radiative(cfg, *tau_meas, &mut out)?,
        Command::Budget { cavity, signal, vs } => run_budget(cfg, *cavity, *signal, *vs, &mut out)?,
        Command::Table1 => run_table1(cfg, &mut out)?,
        Command::Cavity { .. } => run_cavity(cfg, &mut out)?,
        Command::ReproduceAll => run_reproduce_all(cfg, &mut out)?,
    }
    Ok(out)
}

fn manifest(cmd: &Command, cfg: &Config, cfg_path: Option<&Path>, out: &RunOutput, wall: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# run manifest");
    let _ = writeln!(s, "command = {}", cmd.name());
    let _ = writeln!(s, "version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "config_file = {}", cfg_path.map(|p| p.display().to_string()).unwrap_or_else(|| "(built-in defaults)".into()));
    let _ = writeln!(s, "seed = {}", cfg.seed());
    let _ = writeln!(s, "threads = {}", rayon::current_num_threads());
    let _ = writeln!(s, "wall_time_s = {wall:.3}");
    for (name, _) in &out.files {
        let _ = writeln!(s, "output = {name}");
    }
    for n in &out.notes {
        let _ = writeln!(s, "note = {n}");
    }
    let _ = writeln!(s, "\n# resolved config\n{}", cfg.to_text());
    s
}

fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, content) in files {
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}

/// Full run; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match run_inner(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(cli: &Cli) -> Result<()> {
    let start = Instant::now();
    let (cfg, path) = resolve_config(&cli.global, &cli.command)?;
    let threads = cfg.threads();
    if threads > 0 {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let out = execute(&cfg, &cli.command)?;
    let mut files = out.files.clone();
    let wall = start.elapsed().as_secs_f64();
    files.push((format!("{}_manifest.txt", cli.command.name()), manifest(&cli.command, &cfg, path.as_deref(), &out, wall)));
    write_outputs(&cli.global.out, &files)?;
    for (name, _) in &out.files {
        println!("{}", cli.global.out.join(name).display());
    }
    for n in &out.notes {
        eprintln!("{n}");
    }
    Ok(())
}

/// Parse arguments; usage errors exit with the validation code 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
