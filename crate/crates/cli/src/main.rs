use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mkg_core::dynamics::{evolve, evolve_with, EvolveObserver, RhsForm};
use mkg_core::estimates::{
    angle_scan, bilinear_ratio_fuzz, sobolev_product_fuzz, AngleScanConfig, BilinearTarget, ExponentTuple,
    FuzzConfig, SobolevFuzzConfig,
};
use mkg_core::gauge::{
    check_admissibility, gauss_residual, helmholtz_decompose, leray_project, pair_inner, verify_null_identities,
    GaugeState, RegularityTriple,
};
use mkg_core::io::{
    diagnostics_record, snapshot_read, snapshot_write, write_jsonl, CsvDiagnosticsSink, DiagnosticsRecord,
    RunConfig, CONFIG_KEYS,
};
use mkg_core::spectral::random::random_field;
use mkg_core::spectral::{pair_l2_norm, pair_sub, GridSpec};
use mkg_core::Error;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn config_help() -> String {
    let mut s = String::from("Config file keys (`key = value`, `#` starts a comment):\n");
    for (k, v) in CONFIG_KEYS {
        s.push_str(&format!("  {k:<30} {v}\n"));
    }
    s.push_str("\nEnvironment: MKG2D_THREADS caps the worker thread count.");
    s
}

#[derive(Parser)]
#[command(name = "mkg2d", version, about = "Maxwell-Klein-Gordon in 2+1 dimensions: solver and estimate lab")]
#[command(after_help = config_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunOverrides {
    /// Run configuration file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid points per axis.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long, value_parser = ["direct", "nullform"])]
    rhs: Option<String>,
    #[arg(long = "override-admissibility")]
    override_admissibility: bool,
}

impl RunOverrides {
    fn load(&self) -> anyhow::Result<RunConfig> {
        let mut cfg = RunConfig::from_file(&self.config)?;
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(o) = &self.out {
            cfg.out_dir = o.clone();
        }
        if let Some(n) = self.grid {
            cfg.grid = GridSpec::new(n, n, cfg.grid.period, cfg.grid.dealias_fraction)?;
        }
        if let Some(dt) = self.dt {
            cfg.evolve.dt = dt;
        }
        if let Some(t) = self.t_end {
            cfg.evolve.t_end = t;
        }
        if let Some(r) = &self.rhs {
            cfg.evolve.rhs_form = r.parse::<RhsForm>().map_err(|e| Error::Config(e.to_string()))?;
        }
        cfg.override_admissibility |= self.override_admissibility;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evolve configured initial data; writes diagnostics.csv and snapshots.
    Simulate(RunOverrides),
    /// Helmholtz-split the total vector potential of a snapshot.
    Decompose {
        /// Snapshot file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Writes the re-split state here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Null-form identities and Helmholtz checks on random fields.
    CheckIdentities {
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Checks the regularity hypotheses for `(s, r, l)`.
    CheckAdmissibility {
        s: f64,
        r: f64,
        l: f64,
        #[arg(long = "eps-tilde", default_value_t = RegularityTriple::DEFAULT_EPS_TILDE)]
        eps_tilde: f64,
    },
    /// Ratio fuzzing of the estimates; one JSON line per report.
    Fuzz(FuzzArgs),
    /// Time-step refinement study of energy and charge drift.
    Convergence {
        #[command(flatten)]
        run: RunOverrides,
        /// Number of dt halvings.
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Diagnostics norms of a snapshot.
    Norms {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        l: f64,
    },
}

#[derive(Args)]
struct FuzzArgs {
    /// product | nullform_q12 | triple_product | sobolev_product | angle
    #[arg(long)]
    target: String,
    /// s0,s1,s2,b0,b1,b2 (bilinear targets) or s0,s1,s2 (sobolev_product).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    exponents: Vec<f64>,
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long, default_value_t = 32)]
    nt: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    /// JSON-lines output file; standard output otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct RunObserver {
    sink: CsvDiagnosticsSink<BufWriter<File>>,
    dir: PathBuf,
}

impl EvolveObserver for RunObserver {
    fn diagnostics(&mut self, rec: &DiagnosticsRecord) -> mkg_core::Result<()> {
        self.sink.write(rec)
    }

    fn snapshot(&mut self, state: &GaugeState, step: usize) -> mkg_core::Result<()> {
        snapshot_write(state, self.dir.join(format!("snap_{step:06}.mkg2")))
    }
}

fn print_json<T: Serialize>(v: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn simulate(run: &RunOverrides) -> anyhow::Result<u8> {
    let cfg = run.load()?;
    let initial = cfg.initial_state()?;
    fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let csv = File::create(cfg.out_dir.join("diagnostics.csv"))?;
    let mut obs = RunObserver {
        sink: CsvDiagnosticsSink::new(BufWriter::new(csv))?,
        dir: cfg.out_dir.clone(),
    };
    let last = evolve_with(&initial, &cfg.evolve, &mut obs)?;
    obs.sink.into_inner()?.flush()?;
    snapshot_write(&last, cfg.out_dir.join("final.mkg2"))?;
    print_json(&diagnostics_record(&last, &cfg.regularity))?;
    Ok(0)
}

#[derive(Serialize)]
struct DecomposeReport {
    a_l2: f64,
    df_l2: f64,
    cf_l2: f64,
    completeness: f64,
    orthogonality: f64,
}

fn decompose(input: &Path, out: Option<&Path>) -> anyhow::Result<u8> {
    let state = snapshot_read(input)?;
    let rec = state.reconstruct();
    let a = [&rec.a_df[0] + &state.a_cf[0], &rec.a_df[1] + &state.a_cf[1]];
    let (df, cf) = helmholtz_decompose(&a)?;
    let sum = [&df[0] + &cf[0], &df[1] + &cf[1]];
    let a_l2 = pair_l2_norm(&a);
    print_json(&DecomposeReport {
        a_l2,
        df_l2: pair_l2_norm(&df),
        cf_l2: pair_l2_norm(&cf),
        completeness: pair_l2_norm(&pair_sub(&a, &sum)) / a_l2.max(f64::MIN_POSITIVE),
        orthogonality: pair_inner(&df, &cf).norm() / (a_l2 * a_l2).max(f64::MIN_POSITIVE),
    })?;
    if let Some(p) = out {
        let a_df_t = rec.a_df_t.clone();
        let split = GaugeState::from_fields(&rec.phi, &rec.phi_t, &df, &a_df_t, &cf, state.mass)?;
        let split = GaugeState {
            t: state.t,
            eps_tilde: state.eps_tilde,
            ..split
        };
        snapshot_write(&split, p)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct IdentityReport {
    trials: usize,
    max_null_identity: f64,
    max_helmholtz_completeness: f64,
    max_leray_idempotence: f64,
    passed: bool,
}

fn check_identities(n: usize, seed: u64, trials: usize, tol: f64) -> anyhow::Result<u8> {
    let g = GridSpec::square(n)?;
    let kmax = (n / 6) as i64;
    let (mut null, mut comp, mut idem) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..trials as u64 {
        let base = seed.wrapping_mul(1_000_003).wrapping_add(4 * t);
        let phi = random_field(g, kmax, base, false);
        let a = [random_field(g, kmax, base + 1, true), random_field(g, kmax, base + 2, true)];
        let a_df = leray_project(&a);
        null = null.max(verify_null_identities(&phi, &a_df)?.max());
        let (df, cf) = helmholtz_decompose(&a)?;
        let sum = [&df[0] + &cf[0], &df[1] + &cf[1]];
        comp = comp.max(pair_l2_norm(&pair_sub(&a, &sum)) / pair_l2_norm(&a));
        idem = idem.max(pair_l2_norm(&pair_sub(&leray_project(&a_df), &a_df)) / pair_l2_norm(&a_df));
    }
    let passed = null < tol && comp < 1e-12 && idem < 1e-12;
    print_json(&IdentityReport {
        trials,
        max_null_identity: null,
        max_helmholtz_completeness: comp,
        max_leray_idempotence: idem,
        passed,
    })?;
    Ok(if passed { 0 } else { EXIT_NEGATIVE })
}

fn check_admissibility_cmd(s: f64, r: f64, l: f64, eps_tilde: f64) -> anyhow::Result<u8> {
    let reg = RegularityTriple { s, r, l, eps_tilde };
    let report = check_admissibility(&reg);
    if report.admissible {
        println!("admissible");
        Ok(0)
    } else {
        println!("inadmissible");
        for v in &report.violations {
            println!("violated: {v}");
        }
        Ok(EXIT_NEGATIVE)
    }
}

fn fuzz(a: &FuzzArgs) -> anyhow::Result<u8> {
    let mut out: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match a.target.as_str() {
        "angle" => {
            let r = angle_scan(&AngleScanConfig {
                n_samples: a.trials,
                seed: a.seed,
                ..AngleScanConfig::default()
            })?;
            write_jsonl(&mut out, &[r])?;
        }
        "sobolev_product" => {
            let [s0, s1, s2] = a.exponents[..] else {
                bail!(Error::Config("sobolev_product takes --exponents s0,s1,s2".into()));
            };
            let cfg = SobolevFuzzConfig {
                n: a.grid,
                n_trials: a.trials,
                seed: a.seed,
            };
            write_jsonl(&mut out, &[sobolev_product_fuzz(s0, s1, s2, &cfg)?])?;
        }
        name => {
            let target: BilinearTarget = name.parse()?;
            let [s0, s1, s2, b0, b1, b2] = a.exponents[..] else {
                bail!(Error::Config("bilinear targets take --exponents s0,s1,s2,b0,b1,b2".into()));
            };
            let cfg = FuzzConfig {
                n: a.grid,
                nt: a.nt,
                n_trials: a.trials,
                seed: a.seed,
                eps: a.eps,
                ..FuzzConfig::default()
            };
            let e = ExponentTuple::new([s0, s1, s2], [b0, b1, b2]);
            let report = bilinear_ratio_fuzz(target, &e, &cfg)?;
            if !report.violated_conditions.is_empty() {
                eprintln!("warning: exponent conditions fail: {}", report.violated_conditions.join("; "));
            }
            write_jsonl(&mut out, &[report])?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ConvergenceLevel {
    dt: f64,
    energy_drift: f64,
    charge_drift: f64,
    gauss_relative: f64,
}

fn convergence(run: &RunOverrides, levels: usize) -> anyhow::Result<u8> {
    let cfg = run.load()?;
    let initial = cfg.initial_state()?;
    let (e0, q0) = mkg_core::dynamics::conserved_quantities(&initial);
    let mut rows = Vec::new();
    for k in 0..=levels {
        let mut ec = cfg.evolve.clone();
        ec.dt = cfg.evolve.dt / f64::powi(2.0, k as i32);
        ec.diag_stride = usize::MAX;
        ec.snapshot_stride = usize::MAX;
        let (last, _) = evolve(&initial, &ec)?;
        let (e, q) = mkg_core::dynamics::conserved_quantities(&last);
        rows.push(ConvergenceLevel {
            dt: ec.dt,
            energy_drift: (e - e0).abs() / e0.abs().max(f64::MIN_POSITIVE),
            charge_drift: (q - q0).abs() / q0.abs().max(f64::MIN_POSITIVE),
            gauss_relative: gauss_residual(&last).relative,
        });
    }
    write_jsonl(io::stdout().lock(), &rows)?;
    Ok(0)
}

fn norms(input: &Path, s: f64, r: f64, l: f64) -> anyhow::Result<u8> {
    let state = snapshot_read(input)?;
    let reg = RegularityTriple {
        s,
        r,
        l,
        eps_tilde: state.eps_tilde,
    };
    print_json(&diagnostics_record(&state, &reg))?;
    Ok(0)
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("MKG2D_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("MKG2D_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    init_threads()?;
    match &cli.command {
        Command::Simulate(r) => simulate(r),
        Command::Decompose { input, out } => decompose(input, out.as_deref()),
        Command::CheckIdentities { grid, seed, trials, tol } => check_identities(*grid, *seed, *trials, *tol),
        Command::CheckAdmissibility { s, r, l, eps_tilde } => check_admissibility_cmd(*s, *r, *l, *eps_tilde),
        Command::Fuzz(a) => fuzz(a),
        Command::Convergence { run, levels } => convergence(run, *levels),
        Command::Norms { input, s, r, l } => norms(input, *s, *r, *l),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
