//! `curvegap`: runs JSON jobs against the curvegap library.
//!
//! Exit codes: 0 success, 2 invalid input, 3 hypothesis violated
//! (including basepoints and non-birational projections), 4 answer not
//! decidable over the given field, 5 truncation cap reached, 1 internal
//! error.

mod error;
mod job;
mod run;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use curvegap::field::FieldSpec;

use error::{CliError, EXIT_OK};
use job::{Job, Overrides};

#[derive(Parser, Debug)]
#[command(name = "curvegap", version, about = "Gap functions, singularity types and Schubert strata of projected rational normal curves")]
struct Args {
    /// Job file; `-` or nothing reads stdin.
    job: Option<PathBuf>,
    /// Field override: `rational` or `Fp:<p>`.
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    truncation_cap: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// No diagnostics on stderr.
    #[arg(long)]
    quiet: bool,
    /// File holding a JSON array of jobs, run in parallel.
    #[arg(long, conflicts_with = "job")]
    batch: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| CliError::validation(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::validation(e.to_string()))?;
        }
    }
    Ok(s)
}

fn error_json(e: &CliError) -> Value {
    json!({"error": {"kind": e.kind, "message": e.message, "exit_code": e.code}})
}

fn run_one(v: Value, o: &Overrides) -> (i32, Value) {
    match Job::from_value(v, o).and_then(|j| run::run(&j)) {
        Ok(v) => (EXIT_OK, v),
        Err(e) => (e.code, error_json(&e)),
    }
}

fn execute(args: &Args) -> Result<(i32, Value), CliError> {
    let o = Overrides { field: args.field.clone(), seed: args.seed, truncation_cap: args.truncation_cap };
    if let Some(batch) = &args.batch {
        let jobs: Vec<Value> = serde_json::from_str(&read_input(Some(batch))?)?;
        let results: Vec<(i32, Value)> = std::thread::scope(|s| {
            let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(|| run_one(j, &o))).collect();
            handles.into_iter().map(|h| h.join().expect("job thread panicked")).collect()
        });
        let code = results.iter().map(|(c, _)| *c).max().unwrap_or(EXIT_OK);
        return Ok((code, Value::Array(results.into_iter().map(|(_, v)| v).collect())));
    }
    let v: Value = serde_json::from_str(&read_input(args.job.as_ref())?)?;
    Ok(run_one(v, &o))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (code, report) = execute(&args).unwrap_or_else(|e| (e.code, error_json(&e)));
    if code != EXIT_OK && !args.quiet {
        if let Some(msg) = report.pointer("/error/message").and_then(Value::as_str) {
            eprintln!("curvegap: {msg}");
        } else {
            eprintln!("curvegap: a batch job failed (exit code {code})");
        }
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                if !args.quiet {
                    eprintln!("curvegap: {}: {e}", p.display());
                }
                return ExitCode::from(error::EXIT_VALIDATION as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
