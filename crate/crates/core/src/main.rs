use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use edl_core::experiment::{
    cmd_distance, cmd_dotproduct, cmd_generate, cmd_sumproduct, cmd_verify, ExperimentConfig,
    RunOutcome,
};
use edl_core::Result;

/// Entropy and distance-set experiments on self-similar fractals.
#[derive(Parser)]
#[command(name = "edl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance-set slope and the multiscale covering chain.
    Distance(Opts),
    /// Dot-product slopes over candidate pins.
    Dotproduct(Opts),
    /// Sum-product set of a line model.
    Sumproduct(Opts),
    /// Randomised inequality suite.
    Verify(Opts),
    /// Cylinder cloud and natural measure of a model.
    Generate(Opts),
}

#[derive(Args)]
struct Opts {
    /// Catalogue name or path to an IFS JSON file.
    #[arg(long, default_value = "four-corner")]
    model: String,
    /// IFS JSON file; overrides --model.
    #[arg(long)]
    ifs: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    depth: u32,
    #[arg(long, default_value_t = 4)]
    m: u32,
    #[arg(long, default_value_t = 16)]
    n: u32,
    #[arg(long, default_value_t = 0.8)]
    t: f64,
    /// corner, best, index:<i> or <x>,<y>.
    #[arg(long, default_value = "best")]
    pin: String,
    /// Candidate pins for dotproduct when --pin is best.
    #[arg(long, default_value_t = 8)]
    pins: usize,
    /// Cap on points entering pair enumeration.
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Level window a:b for slope fitting.
    #[arg(long, value_parser = parse_levels)]
    levels: Option<[u32; 2]>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Parent directory for run-<label>-<timestamp>/.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    label: Option<String>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_levels(s: &str) -> std::result::Result<[u32; 2], String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad level `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad level `{b}`"))?;
    Ok([a, b])
}

impl From<Opts> for ExperimentConfig {
    fn from(o: Opts) -> Self {
        ExperimentConfig {
            model: o.model,
            ifs: o.ifs,
            depth: o.depth,
            m: o.m,
            n: o.n,
            t: o.t,
            pin: o.pin,
            pins: o.pins,
            subsample: o.subsample,
            seed: o.seed,
            levels: o.levels,
            trials: o.trials,
            out: o.out,
            label: o.label,
            inject_fault: o.inject_fault,
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("EDL_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        edl_core::Error::Config(format!("EDL_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| edl_core::Error::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<RunOutcome> {
    configure_threads()?;
    match cli.command {
        Command::Distance(o) => cmd_distance(&o.into()),
        Command::Dotproduct(o) => cmd_dotproduct(&o.into()),
        Command::Sumproduct(o) => cmd_sumproduct(&o.into()),
        Command::Verify(o) => cmd_verify(&o.into()),
        Command::Generate(o) => cmd_generate(&o.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for f in &out.failures {
                eprintln!("assertion failed: {f}");
            }
            println!("{}", out.dir.display());
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
