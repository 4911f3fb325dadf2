//! Batch driver for the `cfhbf` library.
//!
//! `cfhbf simulate` reads a TOML run description, executes the Monte-Carlo
//! grid, and emits one metrics record per (scheme, sweep value, trial) as CSV
//! or JSON, to stdout or to a file. Exit status: 0 on success, 1 when the
//! configuration (file or flags) is unusable, 2 when a valid run fails while
//! executing.

mod config;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use cfhbf::experiments::{run_plan, write_csv, write_json, write_records, OutputFormat};
use cfhbf::Scheme;
use clap::{Args, Parser, Subcommand};

use crate::config::{echo_toml, parse_sweep, resolve, FileConfig, Overrides};

#[derive(Parser)]
#[command(name = "cfhbf", version, about = "Cell-free hybrid-beamforming simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte-Carlo grid described by a config file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// TOML run description (see the configs/ directory for examples).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Schemes to run, overriding the file (comma-separated ids).
    #[arg(long, value_delimiter = ',', value_name = "SCHEME,...")]
    scheme: Vec<String>,
    /// Sweep override, var=start:step:stop with inclusive stop.
    #[arg(long, value_name = "VAR=A:B:C")]
    sweep: Option<String>,
    /// Trials per sweep value, overriding the file.
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed, overriding the file.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = one per CPU), overriding the file.
    #[arg(long)]
    workers: Option<usize>,
    /// Output file, overriding the file; stdout when neither names one.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format, csv or json, overriding the file.
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Print the fully resolved configuration as TOML and exit.
    #[arg(long)]
    echo_config: bool,
}

/// Failures split by exit status: bad descriptions versus failed executions.
enum Failure {
    Config(String),
    Runtime(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version land on stdout and exit clean; anything else
            // is a bad run description.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let file: FileConfig = toml::from_str(&text)
        .map_err(|e| Failure::Config(format!("{}: {e}", args.config.display())))?;
    let overrides = overrides_from(&args).map_err(Failure::Config)?;
    let plan = resolve(file, overrides).map_err(Failure::Config)?;

    if args.echo_config {
        let rendered = echo_toml(&plan).map_err(Failure::Runtime)?;
        print!("{rendered}");
        return Ok(());
    }

    let records = run_plan(&plan).map_err(|e| Failure::Runtime(e.to_string()))?;
    match &plan.output {
        Some(path) => {
            write_records(path, plan.format, &records)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match plan.format {
                OutputFormat::Csv => write_csv(&records, &mut lock),
                OutputFormat::Json => write_json(&records, &mut lock),
            }
            .map_err(|e| Failure::Runtime(e.to_string()))?;
            lock.flush().map_err(|e| Failure::Runtime(e.to_string()))?;
        }
    }
    Ok(())
}

fn overrides_from(args: &SimulateArgs) -> Result<Overrides, String> {
    let schemes = args
        .scheme
        .iter()
        .map(|s| Scheme::from_str(s).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let sweep = args.sweep.as_deref().map(parse_sweep).transpose()?;
    let format = args
        .format
        .as_deref()
        .map(|f| OutputFormat::from_str(f).map_err(|e| e.to_string()))
        .transpose()?;
    Ok(Overrides {
        schemes,
        sweep,
        trials: args.trials,
        seed: args.seed,
        workers: args.workers,
        out: args.out.clone(),
        format,
    })
}
