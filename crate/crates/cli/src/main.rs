//! `besselheat`: evaluate, tabulate and validate Bessel half-line heat
//! kernels.
//!
//! Exit codes: 0 success, 1 invalid request, 2 validation failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod grid;
mod methods;
mod settings;
mod validate;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bessel_heat::montecarlo::{estimate_hitting_mc, estimate_kernel_mc, McConfig, Scheme};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use methods::{evaluate, Method, Record, CSV_HEADER};
use settings::{Overrides, Settings};
use validate::Suite;

#[derive(Debug)]
pub enum CliError {
    Spec(String),
    Io(String),
    Validation,
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "besselheat", version, about = "Heat kernels of the Bessel operator killed at a barrier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one point and print a JSON record
    Eval(EvalArgs),
    /// Evaluate a parameter grid
    Table(TableArgs),
    /// Run a self-check suite
    Validate(ValidateArgs),
    /// Monte Carlo density estimate
    Mc(McArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
    #[arg(long, value_enum, default_value = "asymptotic")]
    method: Method,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// axis: v | v1,v2,... | lo:hi:n | lo:hi:n:log
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    t: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long, value_enum, default_value = "asymptotic")]
    method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Density {
    Kernel,
    Hitting,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Exact,
    Euler,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    x0: f64,
    #[arg(long, value_enum, default_value = "kernel")]
    density: Density,
    #[arg(long, value_enum, default_value = "exact")]
    scheme: SchemeArg,
    /// disable the Brownian-bridge crossing correction
    #[arg(long)]
    no_bridge: bool,
    /// bin edges as an axis (default grid when absent)
    #[arg(long)]
    bins: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn spec_err(e: bessel_heat::Error) -> CliError {
    CliError::Spec(e.to_string())
}

fn run_eval(args: EvalArgs, s: &Settings) -> Result<(), CliError> {
    args.method.check_index(args.mu)?;
    let rec = evaluate(args.method, args.mu, args.a, args.t, args.x, args.y, s);
    let line = serde_json::to_string(&rec).map_err(|e| CliError::Io(e.to_string()))?;
    println!("{line}");
    Ok(())
}

fn run_table(args: TableArgs, s: &Settings) -> Result<(), CliError> {
    let mus = grid::parse_axis("mu", &args.mu)?;
    let axes = [
        grid::parse_axis("a", &args.a)?,
        grid::parse_axis("t", &args.t)?,
        grid::parse_axis("x", &args.x)?,
        grid::parse_axis("y", &args.y)?,
    ];
    for &mu in &mus {
        args.method.check_index(mu)?;
    }
    let mut points = Vec::new();
    for &mu in &mus {
        for &a in &axes[0] {
            for &t in &axes[1] {
                for &x in &axes[2] {
                    for &y in &axes[3] {
                        points.push((mu, a, t, x, y));
                    }
                }
            }
        }
    }
    let rows: Vec<Record> = points
        .par_iter()
        .map(|&(mu, a, t, x, y)| evaluate(args.method, mu, a, t, x, y, s))
        .collect();
    let mut out = sink(&args.out)?;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in &rows {
                w.write_record(r.csv_fields())?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run_validate(args: ValidateArgs, s: &Settings) -> Result<(), CliError> {
    let checks = validate::run(args.suite, s);
    let mut w = csv::Writer::from_writer(sink(&args.out)?);
    w.write_record(["suite", "check", "measured", "tolerance", "result"])?;
    for c in &checks {
        w.write_record([
            c.suite.to_string(),
            c.name.clone(),
            format!("{:e}", c.measured),
            format!("{:e}", c.tolerance),
            if c.pass() { "pass" } else { "fail" }.to_string(),
        ])?;
    }
    w.flush()?;
    if checks.iter().all(|c| c.pass()) {
        Ok(())
    } else {
        Err(CliError::Validation)
    }
}

fn run_mc(args: McArgs, s: &Settings) -> Result<(), CliError> {
    let mut cfg = McConfig::new(s.paths, s.step, s.seed)
        .with_bridge(!args.no_bridge)
        .with_scheme(match args.scheme {
            SchemeArg::Exact => Scheme::ExactSquaredBessel,
            SchemeArg::Euler => Scheme::EulerSde,
        });
    if let Some(b) = &args.bins {
        cfg = cfg.with_bins(grid::parse_axis("bins", b)?);
    }
    let est = match args.density {
        Density::Kernel => estimate_kernel_mc(args.mu, args.x0, args.a, args.t, &cfg),
        Density::Hitting => estimate_hitting_mc(args.mu, args.x0, args.a, args.t, &cfg),
    }
    .map_err(spec_err)?;
    let mut w = csv::Writer::from_writer(sink(&args.out)?);
    w.write_record(["mu", "a", "t", "x0", "bin_lo", "bin_hi", "value", "std_err"])?;
    for k in 0..est.values.len() {
        w.write_record([
            args.mu.to_string(),
            args.a.to_string(),
            args.t.to_string(),
            args.x0.to_string(),
            est.bin_edges[k].to_string(),
            est.bin_edges[k + 1].to_string(),
            est.values[k].to_string(),
            est.std_errors[k].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let flat = message.split_whitespace().collect::<Vec<_>>().join(" ");
    let line = serde_json::json!({ "error": kind, "message": flat });
    eprintln!("{line}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let msg = text.trim_start_matches("error: ").split("\n\nUsage").next().unwrap_or("");
            return fail("spec", msg);
        }
    };
    let result = Settings::resolve(&cli.overrides).and_then(|s| match cli.command {
        Command::Eval(a) => run_eval(a, &s),
        Command::Table(a) => run_table(a, &s),
        Command::Validate(a) => run_validate(a, &s),
        Command::Mc(a) => run_mc(a, &s),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Spec(m)) => fail("spec", &m),
        Err(CliError::Io(m)) => fail("io", &m),
        Err(CliError::Validation) => ExitCode::from(2),
    }
}
