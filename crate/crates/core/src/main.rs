use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semicross::scenario::{catalog, load_scenario, run_scenario, RunOptions};
use semicross::Error;

/// Run verification scenarios for Fock semicrossed products.
#[derive(Parser)]
#[command(name = "semicross", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (JSON, or TOML by extension).
    Run {
        path: PathBuf,
        /// Also write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Overrides the seed in the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the tolerance in the file (default 1e-9).
        #[arg(long)]
        tol: Option<f64>,
        /// Suppress the human-readable report.
        #[arg(long)]
        quiet: bool,
        /// Run independent checks on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// List scenario kinds and their parameters.
    List {
        #[arg(long)]
        json: bool,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

// a closed pipe (`semicross list | head`) is not an error
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { json } => {
            let kinds = catalog();
            let mut text = String::new();
            if json {
                text = serde_json::to_string_pretty(&kinds).expect("catalog serializes") + "\n";
            } else {
                for k in kinds {
                    let _ = writeln!(text, "{:<16} {}", k.kind, k.summary);
                    for p in k.params {
                        let req = if p.required { "required" } else { "optional" };
                        let _ = match p.default {
                            Some(d) => writeln!(text, "    {:<20} {req}, default {d}: {}", p.name, p.ty),
                            None => writeln!(text, "    {:<20} {req}: {}", p.name, p.ty),
                        };
                    }
                }
            }
            emit(&text);
            ExitCode::SUCCESS
        }
        Command::Run { path, json, seed, tol, quiet, parallel } => {
            let scenario = match load_scenario(&path) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let report = match run_scenario(&scenario, RunOptions { seed, tol, parallel }) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    let code = match e {
                        Error::EmptyInterior(_) => EXIT_FAILED,
                        _ => EXIT_USAGE,
                    };
                    return ExitCode::from(code);
                }
            };
            if !quiet {
                emit(&report.to_human());
            }
            if let Some(out) = json {
                if let Err(e) = std::fs::write(&out, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", out.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
    }
}
