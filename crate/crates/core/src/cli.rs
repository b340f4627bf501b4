//! The `ptscatter` command line: argument parsing, command dispatch and
//! output. The binary is a thin wrapper around [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::poles::{self, PoleError, Region};
use crate::report::{float_value, Cell, Report, Table};
use crate::scarf2::{self, AnalyticError, PotentialParams};
use crate::scatter::{self, DomainConfig, ScatterError, ScatterResult, Side};
use crate::validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NONCONVERGENCE: i32 = 2;

const MAX_SCAN_CELLS: usize = 1_000_000;
const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io { .. } => EXIT_INVALID,
            CliError::NonConvergence(_) => EXIT_NONCONVERGENCE,
        }
    }
}

impl From<AnalyticError> for CliError {
    fn from(err: AnalyticError) -> Self {
        CliError::Invalid(err.to_string())
    }
}

impl From<PoleError> for CliError {
    fn from(err: PoleError) -> Self {
        match err {
            PoleError::NonConvergence { .. } | PoleError::Stagnation { .. } | PoleError::LostPole { .. } => {
                CliError::NonConvergence(err.to_string())
            }
            _ => CliError::Invalid(err.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Analytic,
    Numeric,
    Both,
}

/// Scattering, spectra and spectral singularities of the complex
/// PT-symmetric Scarf II potential V(x) = -V1 sech²x + i V2 sech x tanh x.
#[derive(Debug, Parser)]
#[command(name = "ptscatter", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format [default: csv, json for `validate`]
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Truncation half-width L of the numerical domain [-L, L]
    /// [default: max(18, decay bound of the potential)]
    #[arg(long = "domain-L", global = true)]
    pub domain_l: Option<f64>,
    /// Relative tolerance of the ODE integrator
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub rel_tol: f64,
    /// Tolerance on V1 + |V2| - (4n²+4n+3/4) for singularity detection
    #[arg(long, default_value_t = scarf2::DEFAULT_SINGULARITY_TOL, global = true)]
    pub sing_tol: f64,
    /// Worker threads for parallel sweeps
    #[arg(long, env = "PTSCATTER_JOBS", global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: f64,
}

impl PotentialArgs {
    fn params(&self) -> Result<PotentialParams, CliError> {
        finite("v1", self.v1)?;
        finite("v2", self.v2)?;
        Ok(PotentialParams::new(self.v1, self.v2))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission and reflection over a grid of real wavenumbers
    Sweep(SweepArgs),
    /// Discrete spectrum and PT phase
    Spectrum(PotentialArgs),
    /// Spectral-singularity check (with --v2) or solve (with --n)
    Singularity(SingularityArgs),
    /// Poles of the transmission amplitude in a complex-k rectangle
    Poles(PolesArgs),
    /// Singularity and PT-phase map over a (V1, V2) grid
    Scan2d(Scan2dArgs),
    /// Run the built-in acceptance checks
    Validate,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, conflicts_with_all = ["emin", "emax"], requires = "kmax")]
    pub kmin: Option<f64>,
    #[arg(long, requires = "kmin")]
    pub kmax: Option<f64>,
    #[arg(long, requires = "emax")]
    pub emin: Option<f64>,
    #[arg(long, requires = "emin")]
    pub emax: Option<f64>,
    /// Number of grid points
    #[arg(long, short, default_value_t = 200)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    pub side: SideArg,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Args)]
pub struct SingularityArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "n", required_unless_present = "n")]
    pub v2: Option<f64>,
    /// Level index n >= 1
    #[arg(long, short)]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct PolesArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    pub re_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 4.0)]
    pub re_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -2.0)]
    pub im_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 4.0)]
    pub im_max: f64,
    /// Seeds per side of the region
    #[arg(long, default_value_t = 16)]
    pub density: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Scan2dArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub v1_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v1_max: f64,
    #[arg(long, default_value_t = 101)]
    pub nv1: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub v2_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v2_max: f64,
    #[arg(long, default_value_t = 101)]
    pub nv2: usize,
}

/// Outcome of a command: the report to write plus the exit code to use
/// after writing it.
struct Outcome {
    report: Report,
    default_format: Format,
    exit_code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn data(report: Report) -> Self {
        Self {
            report,
            default_format: Format::Csv,
            exit_code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

/// Parse `args` (including the program name), run the command and return
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    check_globals(g)?;
    let outcome = match g.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| invalid(format!("cannot start {jobs} worker threads: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let format = g.format.unwrap_or(outcome.default_format);
    let text = match format {
        Format::Csv => outcome.report.to_csv(),
        Format::Json => outcome.report.to_json(),
    };
    emit(g.output.as_deref(), &text)?;
    Ok(outcome.exit_code)
}

fn check_globals(g: &GlobalOpts) -> Result<(), CliError> {
    if let Some(l) = g.domain_l {
        if !(l.is_finite() && l > 0.0) {
            return Err(invalid(format!("--domain-L must be positive and finite, got {l}")));
        }
    }
    if !(g.rel_tol > 0.0 && g.rel_tol <= 1e-3) {
        return Err(invalid(format!("--rel-tol must lie in (0, 1e-3], got {}", g.rel_tol)));
    }
    if !(g.sing_tol.is_finite() && g.sing_tol > 0.0) {
        return Err(invalid(format!("--sing-tol must be positive, got {}", g.sing_tol)));
    }
    if g.jobs == Some(0) {
        return Err(invalid("--jobs must be at least 1"));
    }
    Ok(())
}

/// Write to stdout, or atomically to a file: the target only appears once
/// the full text has been written.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|()| out.flush())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            });
    };
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".partial-{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Sweep(a) => sweep(g, a),
        Command::Spectrum(a) => spectrum(g, a),
        Command::Singularity(a) => singularity(g, a),
        Command::Poles(a) => pole_scan(g, a),
        Command::Scan2d(a) => scan2d(g, a),
        Command::Validate => run_validate(g),
    }
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("--{name} must be finite, got {x}")))
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

fn domain(g: &GlobalOpts, p: &PotentialParams) -> DomainConfig {
    let cfg = match g.domain_l {
        Some(l) => DomainConfig::default().with_half_width(l),
        None => DomainConfig::for_potential(p),
    };
    DomainConfig {
        rel_tol: g.rel_tol,
        ..cfg
    }
}

fn meta(g: &GlobalOpts, command: &str, cfg: Option<&DomainConfig>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("ptscatter"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("rel_tol".into(), float_value(g.rel_tol));
    m.insert("sing_tol".into(), float_value(g.sing_tol));
    match cfg {
        Some(cfg) => {
            m.insert("abs_tol".into(), float_value(cfg.abs_tol));
            m.insert("domain_L".into(), float_value(cfg.half_width));
        }
        None => {
            m.insert("domain_L".into(), g.domain_l.map_or(json!("auto"), float_value));
        }
    }
    m
}

fn potential_params(p: PotentialParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("v1".into(), float_value(p.v1));
    m.insert("v2".into(), float_value(p.v2));
    m
}

fn sweep(g: &GlobalOpts, a: &SweepArgs) -> Result<Outcome, CliError> {
    let p = a.potential.params()?;
    if a.n == 0 || a.n > MAX_SWEEP_POINTS {
        return Err(invalid(format!("--n must lie in 1..={MAX_SWEEP_POINTS}, got {}", a.n)));
    }
    let ks: Vec<f64> = match (a.kmin, a.kmax, a.emin, a.emax) {
        (Some(lo), Some(hi), None, None) => {
            if !(finite("kmin", lo)? > 0.0 && finite("kmax", hi)? >= lo) {
                return Err(invalid(format!("need 0 < kmin <= kmax, got {lo}, {hi}")));
            }
            linspace(lo, hi, a.n)
        }
        (None, None, Some(lo), Some(hi)) => {
            if !(finite("emin", lo)? > 0.0 && finite("emax", hi)? >= lo) {
                return Err(invalid(format!("need 0 < emin <= emax, got {lo}, {hi}")));
            }
            linspace(lo, hi, a.n).into_iter().map(f64::sqrt).collect()
        }
        _ => return Err(invalid("give either --kmin/--kmax or --emin/--emax")),
    };
    let cfg = domain(g, &p);
    cfg.validate().map_err(|e| invalid(e.to_string()))?;

    let numeric = a.mode != Mode::Analytic;
    let analytic = a.mode != Mode::Numeric;
    let sides: Vec<Side> = match a.side {
        SideArg::Left => vec![Side::LeftIncidence],
        SideArg::Right => vec![Side::RightIncidence],
        SideArg::Both => vec![Side::LeftIncidence, Side::RightIncidence],
    };

    let mut warnings = Vec::new();
    let mut per_side: Vec<Vec<Option<ScatterResult>>> = Vec::new();
    if numeric {
        for &side in &sides {
            let results = scatter::sweep(&p, &ks, side, &cfg).map_err(|e| invalid(e.to_string()))?;
            let mut errors: Vec<ScatterError> = Vec::new();
            let mut column = Vec::with_capacity(results.len());
            for (k, res) in ks.iter().zip(results) {
                match res {
                    Ok(r) => column.push(Some(r)),
                    Err(e) => {
                        warnings.push(format!("{side} at k = {k}: {e}"));
                        errors.push(e);
                        column.push(None);
                    }
                }
            }
            if errors.len() == ks.len() {
                return Err(match &errors[0] {
                    ScatterError::NonConvergence { .. } => CliError::NonConvergence(errors[0].to_string()),
                    e => invalid(e.to_string()),
                });
            }
            per_side.push(column);
        }
    }

    let mut columns = vec!["k".to_string(), "E".to_string()];
    if analytic {
        columns.push("T_analytic".into());
    }
    if numeric {
        columns.push("T_numeric".into());
        for side in &sides {
            let tag = match side {
                Side::LeftIncidence => "left",
                Side::RightIncidence => "right",
            };
            columns.push(format!("R_{tag}"));
            columns.push(format!("flux_defect_{tag}"));
        }
    }
    if analytic && numeric {
        columns.push("rel_discrepancy".into());
    }

    let mut table = Table::new(columns);
    for (i, &k) in ks.iter().enumerate() {
        let mut row = vec![Cell::Num(k), Cell::Num(k * k)];
        let t_an = if analytic {
            match scarf2::transmission_coefficient(p, k) {
                Ok(t) => Some(t),
                Err(e) => {
                    warnings.push(format!("analytic at k = {k}: {e}"));
                    None
                }
            }
        } else {
            None
        };
        if analytic {
            row.push(Cell::opt(t_an));
        }
        let t_num = per_side
            .iter()
            .find_map(|col| col[i].as_ref())
            .map(|r| r.transmission);
        if numeric {
            row.push(Cell::opt(t_num));
            for col in &per_side {
                row.push(Cell::opt(col[i].as_ref().map(|r| r.reflection)));
                row.push(Cell::opt(col[i].as_ref().map(|r| r.flux_defect)));
            }
        }
        if analytic && numeric {
            let rel = match (t_an, t_num) {
                (Some(a), Some(n)) => Some((n - a).abs() / a.abs()),
                _ => None,
            };
            row.push(Cell::opt(rel));
        }
        table.push(row);
    }

    let mut params = potential_params(p);
    params.insert("points".into(), json!(ks.len()));
    params.insert("side".into(), json!(format!("{:?}", a.side).to_lowercase()));
    params.insert("mode".into(), json!(format!("{:?}", a.mode).to_lowercase()));
    params.insert("phase".into(), json!(scarf2::pt_phase(p).to_string()));
    let mut m = meta(g, "sweep", Some(&cfg));
    m.insert("warnings".into(), json!(warnings.len()));
    Ok(Outcome {
        warnings,
        ..Outcome::data(Report { params, table, meta: m })
    })
}

fn spectrum(g: &GlobalOpts, a: &PotentialArgs) -> Result<Outcome, CliError> {
    let p = a.params()?;
    let report = scarf2::bound_spectrum(p);
    let mut table = Table::new(["branch", "n", "re_E", "im_E"]);
    for level in &report.levels {
        table.push(vec![
            level.branch.to_string().into(),
            level.n.into(),
            level.energy.re.into(),
            level.energy.im.into(),
        ]);
    }
    let mut params = potential_params(p);
    params.insert("phase".into(), json!(report.phase.to_string()));
    let d = scarf2::derive_params(p);
    for (name, z) in [("r", d.r), ("s", d.s), ("t", d.t)] {
        params.insert(name.into(), json!([float_value(z.re), float_value(z.im)]));
    }
    let literal: Vec<Value> = scarf2::literal_integer_part_levels(p)
        .iter()
        .map(|l| json!({"branch": l.branch.to_string(), "n": l.n, "re_E": float_value(l.energy.re), "im_E": float_value(l.energy.im)}))
        .collect();
    let mut m = meta(g, "spectrum", None);
    m.insert("integer_part_level_counting".into(), Value::Array(literal));
    Ok(Outcome::data(Report { params, table, meta: m }))
}

fn singularity(g: &GlobalOpts, a: &SingularityArgs) -> Result<Outcome, CliError> {
    let v1 = finite("v1", a.v1)?;
    let (p, solved_n) = match (a.v2, a.n) {
        (Some(v2), None) => (PotentialParams::new(v1, finite("v2", v2)?), None),
        (None, Some(n)) => {
            let (v2, _) = scarf2::singularity_solve_v2(v1, n)?;
            (PotentialParams::new(v1, v2), Some(n))
        }
        _ => return Err(invalid("give exactly one of --v2 or --n")),
    };
    let report = scarf2::singularity_check(p, g.sing_tol);
    let cfg = domain(g, &p);
    cfg.validate().map_err(|e| invalid(e.to_string()))?;

    let mut warnings = Vec::new();
    let mut t_numeric = |e: f64| -> Result<Option<f64>, CliError> {
        if !(e > 0.0) {
            return Ok(None);
        }
        match scatter::solve_scattering(&p, e.sqrt(), Side::LeftIncidence, &cfg) {
            Ok(r) => Ok(Some(r.transmission)),
            Err(err @ ScatterError::NonConvergence { .. }) => Err(CliError::NonConvergence(err.to_string())),
            Err(err) => {
                warnings.push(format!("numeric T at E = {e}: {err}"));
                Ok(None)
            }
        }
    };
    let (t_at, t_below, t_above) = match report.e_star {
        Some(e) if report.positivity_ok => (t_numeric(e)?, t_numeric(e - 0.1)?, t_numeric(e + 0.1)?),
        _ => (None, None, None),
    };

    let mut table = Table::new([
        "v1",
        "v2",
        "n",
        "detuning",
        "e_star",
        "k_star",
        "positivity_ok",
        "abstract_positivity_ok",
        "satisfied",
        "T_numeric_at_e_star",
        "T_numeric_below",
        "T_numeric_above",
    ]);
    table.push(vec![
        p.v1.into(),
        p.v2.into(),
        report.n.into(),
        report.detuning.into(),
        report.e_star.into(),
        report.e_star.filter(|e| *e > 0.0).map(f64::sqrt).into(),
        report.positivity_ok.into(),
        report.abstract_positivity_ok.into(),
        report.satisfied.into(),
        t_at.into(),
        t_below.into(),
        t_above.into(),
    ]);
    let mut params = potential_params(p);
    params.insert("solved_for_n".into(), solved_n.map_or(Value::Null, |n| json!(n)));
    params.insert("energy_offset".into(), json!(0.1));
    let mut m = meta(g, "singularity", Some(&cfg));
    m.insert("warnings".into(), json!(warnings.len()));
    Ok(Outcome {
        warnings,
        ..Outcome::data(Report { params, table, meta: m })
    })
}

fn pole_scan(g: &GlobalOpts, a: &PolesArgs) -> Result<Outcome, CliError> {
    let p = a.potential.params()?;
    for (name, x) in [("re-min", a.re_min), ("re-max", a.re_max), ("im-min", a.im_min), ("im-max", a.im_max)] {
        finite(name, x)?;
    }
    if a.density == 0 || a.density > 1000 {
        return Err(invalid(format!("--density must lie in 1..=1000, got {}", a.density)));
    }
    let region = Region::new((a.re_min, a.re_max), (a.im_min, a.im_max));
    let scan = poles::scan_poles(p, region, a.density)?;
    if scan.poles.is_empty() && scan.failed == scan.seeds {
        return Err(CliError::NonConvergence(format!(
            "Newton iteration failed from all {} seeds",
            scan.seeds
        )));
    }
    let mut table = Table::new(["re_k", "im_k", "re_E", "im_E", "kind", "residual", "iterations"]);
    for rec in &scan.poles {
        table.push(vec![
            rec.k_pole.re.into(),
            rec.k_pole.im.into(),
            rec.energy.re.into(),
            rec.energy.im.into(),
            rec.kind.to_string().into(),
            rec.residual.into(),
            rec.iterations.into(),
        ]);
    }
    let mut params = potential_params(p);
    params.insert("re_range".into(), json!([region.re_min, region.re_max]));
    params.insert("im_range".into(), json!([region.im_min, region.im_max]));
    params.insert("density".into(), json!(a.density));
    let mut m = meta(g, "poles", None);
    m.insert("seeds".into(), json!(scan.seeds));
    m.insert("failed_seeds".into(), json!(scan.failed));
    m.insert("converged_outside_region".into(), json!(scan.outside));
    Ok(Outcome::data(Report { params, table, meta: m }))
}

fn scan2d(g: &GlobalOpts, a: &Scan2dArgs) -> Result<Outcome, CliError> {
    for (name, x) in [("v1-min", a.v1_min), ("v1-max", a.v1_max), ("v2-min", a.v2_min), ("v2-max", a.v2_max)] {
        finite(name, x)?;
    }
    if a.v1_min > a.v1_max || a.v2_min > a.v2_max {
        return Err(invalid("ranges must satisfy min <= max"));
    }
    let cells = a.nv1.saturating_mul(a.nv2);
    if a.nv1 == 0 || a.nv2 == 0 || cells > MAX_SCAN_CELLS {
        return Err(invalid(format!(
            "grid must have between 1 and {MAX_SCAN_CELLS} cells, got {} x {}",
            a.nv1, a.nv2
        )));
    }
    let v1s = linspace(a.v1_min, a.v1_max, a.nv1);
    let v2s = linspace(a.v2_min, a.v2_max, a.nv2);
    let rows: Vec<Vec<Cell>> = (0..cells)
        .into_par_iter()
        .map(|idx| {
            let p = PotentialParams::new(v1s[idx / a.nv2], v2s[idx % a.nv2]);
            let rep = scarf2::singularity_check(p, g.sing_tol);
            vec![
                p.v1.into(),
                p.v2.into(),
                rep.n.into(),
                rep.detuning.into(),
                rep.e_star.into(),
                rep.positivity_ok.into(),
                scarf2::pt_phase(p).to_string().into(),
                rep.satisfied.into(),
            ]
        })
        .collect();
    let mut table = Table::new(["v1", "v2", "n", "detuning", "e_star", "positivity_ok", "phase", "singular"]);
    table.rows = rows;
    let mut params = Map::new();
    params.insert("v1_range".into(), json!([a.v1_min, a.v1_max]));
    params.insert("v2_range".into(), json!([a.v2_min, a.v2_max]));
    params.insert("nv1".into(), json!(a.nv1));
    params.insert("nv2".into(), json!(a.nv2));
    Ok(Outcome::data(Report {
        params,
        table,
        meta: meta(g, "scan2d", None),
    }))
}

fn run_validate(g: &GlobalOpts) -> Result<Outcome, CliError> {
    let settings = validate::Settings {
        half_width: g.domain_l,
        ..validate::Settings::default()
    };
    let checks = validate::run_all(&settings);
    let passed = checks.iter().all(validate::Check::passed);
    let mut table = Table::new(["id", "name", "status", "detail", "seconds"]);
    for c in &checks {
        table.push(vec![
            c.id.clone().into(),
            c.name.into(),
            c.status.to_string().into(),
            c.detail.clone().into(),
            c.seconds.into(),
        ]);
    }
    let mut params = Map::new();
    params.insert("seed".into(), json!(settings.seed));
    let mut m = meta(g, "validate", None);
    m.insert("passed".into(), json!(passed));
    m.insert(
        "failed".into(),
        Value::Array(
            checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| json!(c.id))
                .collect(),
        ),
    );
    for c in &checks {
        eprintln!("{c}");
    }
    Ok(Outcome {
        report: Report { params, table, meta: m },
        default_format: Format::Json,
        exit_code: if passed { EXIT_OK } else { EXIT_INVALID },
        warnings: Vec::new(),
    })
}
