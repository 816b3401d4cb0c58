use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use semimodel_cli::{exit_code, run_command, Bounds, Command, SessionConfig};

/// L-infinity algebroids over polynomial singular foliations.
#[derive(Parser)]
#[command(name = "semimodel", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Session file.
    input: PathBuf,
    /// Degree bound D for universal structures and replacements.
    #[arg(long, default_value_t = 2)]
    bound_degree: usize,
    /// Bracket-weight bound W for free algebroid truncations.
    #[arg(long, default_value_t = 2)]
    bound_weight: usize,
    #[arg(long, default_value_t = 3)]
    max_arity: usize,
    /// Resolution length (default: number of variables).
    #[arg(long)]
    length: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only this foliation.
    #[arg(long)]
    name: Option<String>,
    /// Replace in anchored complexes rather than algebroids.
    #[arg(long)]
    dg: bool,
    #[arg(long, short)]
    verbose: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let cfg = SessionConfig {
        command: a.command,
        input: a.input,
        out: a.out,
        bounds: Bounds {
            length: a.length,
            degree: a.bound_degree,
            weight: a.bound_weight,
            max_arity: a.max_arity,
        },
        name: a.name,
        dg: a.dg,
        verbose: a.verbose,
    };
    let outcome = match run_command(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &outcome.report) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.report),
    }
    match &outcome.witness {
        None => ExitCode::SUCCESS,
        Some(w) => {
            eprintln!("negative certificate: {w}");
            ExitCode::from(1)
        }
    }
}
