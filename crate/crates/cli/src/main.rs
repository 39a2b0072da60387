use std::path::PathBuf;
use std::process::ExitCode;

use besselmap_cli::{init_threads, load_config, output::write_atomic, Command};
use clap::{Args, Parser, Subcommand};

/// Complex Bessel functions and Bessel-based boundary mappings.
#[derive(Parser)]
#[command(name = "besselmap", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// J_n and Y_n at a list of points or on a polar grid (CSV)
    Eval(RunArgs),
    /// Cauchy-Riemann and |w'| scan over an annulus (CSV)
    Verify(RunArgs),
    /// Boundary error over an epsilon sweep with an order fit (CSV)
    Sweep(RunArgs),
    /// Image of a polar grid, the target boundary and |z| = R (SVG)
    MapGrid(RunArgs),
    /// Least-squares (A, B) for a boundary, as config lines
    Calibrate(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path; written only if the run succeeds
    #[arg(long)]
    output: Option<PathBuf>,
    /// Overrides of config keys, e.g. `--epsilon 0.1`
    #[arg(allow_hyphen_values = true, num_args = 0.., value_name = "--KEY VALUE")]
    overrides: Vec<String>,
}

/// Overrides are collected positionally, so `--config` and `--output` given
/// after the first override land among them and are pulled out here.
fn take_reserved(args: &mut RunArgs) -> anyhow::Result<()> {
    let mut rest = Vec::new();
    let mut it = std::mem::take(&mut args.overrides).into_iter();
    while let Some(arg) = it.next() {
        let (name, inline) = match arg.split_once('=') {
            Some((n, v)) => (n.to_string(), Some(v.to_string())),
            None => (arg.clone(), None),
        };
        let slot = match name.as_str() {
            "--config" => &mut args.config,
            "--output" => &mut args.output,
            _ => {
                rest.push(arg);
                continue;
            }
        };
        let value = match inline {
            Some(v) => v,
            None => it.next().ok_or_else(|| anyhow::anyhow!("`{name}` needs a value"))?,
        };
        if slot.replace(PathBuf::from(value)).is_some() {
            anyhow::bail!("`{name}` given more than once");
        }
    }
    args.overrides = rest;
    Ok(())
}

fn run(command: Command, mut args: RunArgs) -> anyhow::Result<()> {
    take_reserved(&mut args)?;
    let output = args.output.clone().ok_or_else(|| anyhow::anyhow!("`--output <path>` is required"))?;
    init_threads()?;
    let cfg = load_config(args.config.as_deref(), &args.overrides)?;
    let report = command.run(&cfg)?;
    write_atomic(&output, &report).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", output.display()))?;
    if command == Command::Calibrate {
        print!("{report}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Eval(a) => (Command::Eval, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::MapGrid(a) => (Command::MapGrid, a),
        Sub::Calibrate(a) => (Command::Calibrate, a),
    };
    match run(command, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
