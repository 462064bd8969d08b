use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use desargues::figure::FigureKind;
use desargues::Model;

mod commands;

/// Exact affine planes over skew fields: theorem checks, construction
/// scripts, figures and finite-plane enumeration.
#[derive(Parser, Debug)]
#[command(name = "desargues", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check ratio invariance and preservation theorems.
    Verify(VerifyArgs),
    /// Parse and evaluate a construction script.
    Run(RunArgs),
    /// Draw a construction as SVG.
    Figure(FigureArgs),
    /// Enumerate the plane over gf(p) and compare the constructed tables.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// gf:<p>, rational or quaternion. Without it gf:7, rational and
    /// quaternion are all checked.
    #[arg(long, value_parser = parse_model)]
    model: Option<Model>,
    /// Trials per theorem case.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, env = "DESARGUES_SEED", default_value_t = 0)]
    seed: u64,
    /// Comma-separated theorem ids, or `all`.
    #[arg(long, default_value = "all")]
    check: String,
    /// Enumerate every admissible instance instead of sampling (gf only).
    #[arg(long)]
    exhaustive: bool,
    /// Write a JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    script: PathBuf,
    /// Write a JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write each emitted artifact as `<name>.svg` into this directory.
    #[arg(long)]
    emit_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: FigureKind,
    #[arg(long, value_parser = parse_model, default_value = "gf:7")]
    model: Model,
    /// Chart coordinate of A.
    #[arg(long, allow_hyphen_values = true, default_value = "3")]
    a: String,
    /// Chart coordinate of B.
    #[arg(long, allow_hyphen_values = true, default_value = "5")]
    b: String,
    /// Chart coordinate of C (ratio3).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Translation vector `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    /// Dilatation centre `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    centre: Option<String>,
    /// Dilatation factor.
    #[arg(long, allow_hyphen_values = true)]
    factor: Option<String>,
    /// Projection target `x,y,dx,dy` (a point and a direction).
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Projection direction `dx,dy`.
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Canvas size in pixels.
    #[arg(long, default_value_t = 480, value_parser = clap::value_parser!(u32).range(64..=8192))]
    size: u32,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// A prime no larger than 13.
    p: u64,
    /// Write a JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: desargues::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<FigureKind, String> {
    s.parse().map_err(|e: desargues::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Run(a) => commands::run(a),
        Command::Figure(a) => commands::figure(a),
        Command::Enumerate(a) => commands::enumerate(a),
    };
    ExitCode::from(status as u8)
}
