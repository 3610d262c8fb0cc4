//! `polyknot`: classify quartics, scan fibers, verify, plot and print the
//! first-column ledger. Records go to stdout (or `--output`) as JSON lines.

mod classify;
mod columns;
mod context;
mod plot;
mod report;
mod scan;
mod svg;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use context::Ctx;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "polyknot", version, about = "Relation curves, quartic cells and discriminant checks")]
struct Cli {
    /// Seed for every random sample drawn by the command.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Override the numeric tolerance of the checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Override the number of random samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form, cell, critical points and relation curve of a quartic.
    Classify(classify::Args),
    /// Fiber table and analytic-versus-oracle agreement for a cell or quartic.
    Scan(scan::Args),
    /// Run a named check suite.
    Verify(verify::Args),
    /// Write an SVG figure.
    Plot(plot::Args),
    /// The first column of the spectral sequence with its supporting scans.
    Columns(columns::Args),
}

fn run(cli: Cli) -> Result<Report, String> {
    let ctx = Ctx::new(cli.seed, cli.tolerance, cli.samples)?;
    match cli.command {
        Command::Classify(a) => classify::run(&ctx, &a),
        Command::Scan(a) => scan::run(&ctx, &a),
        Command::Verify(a) => verify::run(&ctx, &a),
        Command::Plot(a) => plot::run(&ctx, &a),
        Command::Columns(a) => columns::run(&ctx, &a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let start = Instant::now();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let passed = report.passed();
    let summary = format!(
        "{}: {} checks, {} failed ({:.2} s)",
        report.command(),
        report.checks(),
        report.failed().len(),
        start.elapsed().as_secs_f64()
    );
    let written = match &output {
        Some(path) => File::create(path)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|f| report.write_to(&mut BufWriter::new(f)).map_err(|e| e.to_string())),
        None => report.write_to(&mut io::stdout().lock()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    eprintln!("{summary}");
    let _ = io::stderr().flush();
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
