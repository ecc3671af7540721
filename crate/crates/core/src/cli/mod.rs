//! `cmax` command-line interface.
//!
//! Every command validates its inputs and computes all output in memory
//! before anything is written, so a validation failure leaves no partial
//! files behind. Exit codes: 0 success, 1 I/O error, 2 validation error.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use self::config::{RunConfig, CONFIG_ENV};
use self::output::{write_records, OutputFormat, Record};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        // Lead with the variant name so scripts can match on it.
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        CliError::Validation(format!("{name}: {e}"))
    }
}

/// Comma-separated list of floats, e.g. `0,0,0,1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumList(pub Vec<f64>);

impl FromStr for NumList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("`{}`: {e}", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(NumList)
    }
}

#[derive(Debug, Parser)]
#[command(name = "cmax", version, about = "Kinematics, dynamics and wave equations with an invariant maximum speed c_m")]
pub struct Cli {
    /// Config file; defaults to $CMAX_CONFIG when set.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Light speed (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Maximum speed c_m, must exceed c.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cm: Option<f64>,
    /// Reduced Planck constant (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write records here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Seed for random sweeps (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform events between frames.
    Boost(BoostArgs),
    /// Compose a velocity with a frame velocity.
    Compose(ComposeArgs),
    /// Two-particle collision checks.
    Collide(CollideArgs),
    /// Integrate a particle under a constant force.
    Trajectory(TrajectoryArgs),
    /// Evolve the scalar or spinor wave equation.
    Wave(WaveArgs),
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    /// Frame velocity along x.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Event as x,y,z,t (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub event: Vec<NumList>,
    /// CSV file with header x,y,z,t.
    #[arg(long)]
    pub events: Option<PathBuf>,
    /// Map Σ coordinates back to Σ'.
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Velocity as ux or ux,uy,uz.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<NumList>,
    #[arg(long)]
    pub inverse: bool,
    /// Speed of counter-moving light seen from a frame moving at c.
    #[arg(long)]
    pub light_frame_check: bool,
}

#[derive(Debug, Args)]
pub struct CollideArgs {
    /// Centre-of-mass frame velocity.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Particle speed in the centre-of-mass frame.
    #[arg(long, allow_hyphen_values = true)]
    pub vprime: Option<f64>,
    /// Characteristic mass of both particles.
    #[arg(long, allow_hyphen_values = true)]
    pub mc: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mc1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mc2: Option<f64>,
    /// CSV file with header m_c1,m_c2,v_cm,v_prime.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    /// Number of random identical-particle scenarios.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mc: Option<f64>,
    /// Initial velocity, vx or vx,vy,vz (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<NumList>,
    /// Initial position x,y,z (default origin).
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<NumList>,
    /// Constant force fx,fy,fz.
    #[arg(long, allow_hyphen_values = true)]
    pub force: Option<NumList>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Equation {
    Kg,
    Dirac,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[arg(long, value_enum)]
    pub equation: Option<Equation>,
    #[arg(long, allow_hyphen_values = true)]
    pub mc: Option<f64>,
    /// Grid points (default 256).
    #[arg(long)]
    pub n: Option<usize>,
    /// Periodic domain length (default 2π).
    #[arg(long, allow_hyphen_values = true)]
    pub length: Option<f64>,
    /// Time step (default: stability limit times --cfl).
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    /// Number of steps (default 1000).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Stability safety factor in (0, 1] (default 0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub cfl: Option<f64>,
    /// Plane-wave mode index.
    #[arg(long, allow_hyphen_values = true)]
    pub mode: Option<i64>,
    /// CSV initial field: x,re,im (kg) or x,re_upper,im_upper[,re_lower,im_lower] (dirac).
    #[arg(long)]
    pub initial: Option<PathBuf>,
    /// Snapshot interval in steps.
    #[arg(long)]
    pub snap_every: Option<usize>,
    /// Directory for snapshot CSV files.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
}

/// Everything a command produces, held until validation has finished.
pub(crate) struct Outcome {
    pub records: Vec<Record>,
    pub trailer: Vec<String>,
    pub default_format: OutputFormat,
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

/// Run with explicit arguments and streams. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Process entry point used by the `cmax` binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli.config.clone().or_else(|| {
        std::env::var_os(CONFIG_ENV)
            .filter(|p| !p.is_empty())
            .map(PathBuf::from)
    });
    match path {
        Some(p) => RunConfig::load(&p),
        None => Ok(RunConfig::default()),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    let ctx = cfg.context(cli.c, cli.cm, cli.hbar)?;
    let seed = cli.seed.or(cfg.output.seed).unwrap_or(0);
    let outcome = match &cli.command {
        Command::Boost(a) => commands::boost(&ctx, &cfg, a)?,
        Command::Compose(a) => commands::compose(&ctx, &cfg, a)?,
        Command::Collide(a) => commands::collide(&ctx, &cfg, a, seed)?,
        Command::Trajectory(a) => commands::trajectory(&ctx, &cfg, a)?,
        Command::Wave(a) => commands::wave(&ctx, &cfg, a)?,
    };
    let format = cli.format.or(cfg.output.format).unwrap_or(outcome.default_format);

    for (path, bytes) in &outcome.files {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
        }
        std::fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    }

    let out_path = cli.output.clone().or_else(|| cfg.output.path.clone());
    let io_err = |e: std::io::Error| CliError::Io(format!("writing output: {e}"));
    match out_path {
        Some(p) => {
            let mut buf = Vec::new();
            write_records(&mut buf, format, &outcome.records, &outcome.trailer).map_err(io_err)?;
            std::fs::write(&p, buf)
                .map_err(|e| CliError::Io(format!("writing {}: {e}", p.display())))
        }
        None => write_records(stdout, format, &outcome.records, &outcome.trailer).map_err(io_err),
    }
}
