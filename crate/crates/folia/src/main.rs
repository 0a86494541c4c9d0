//! `folia` command line: parse a foliation file and run analyses.

use clap::{Parser, ValueEnum};
use folia::report::{emit_report, AnalysisOptions, Command, ReportFormat};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliCommand {
    /// Contact order of a candidate polynomial at points
    ContactOrder,
    /// Truncated invariant ideal and dimension estimate per point
    Invariant,
    /// Dimension-estimate table over points
    Profile,
    /// Extactic polynomial of each field
    Extactic,
    /// Constant-cofactor Darboux search and recombination
    FirstIntegral,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Self {
        match c {
            CliCommand::ContactOrder => Command::ContactOrder,
            CliCommand::Invariant => Command::Invariant,
            CliCommand::Profile => Command::Profile,
            CliCommand::Extactic => Command::Extactic,
            CliCommand::FirstIntegral => Command::FirstIntegral,
        }
    }
}

/// Exact analysis of polynomial vector fields: contact orders, minimal
/// invariant varieties, and rational first integrals.
#[derive(Debug, Parser)]
#[command(name = "folia", version)]
struct Cli {
    #[arg(value_enum)]
    command: CliCommand,

    /// Foliation file (vars/params/field/point/candidate lines)
    file: PathBuf,

    /// Restrict to named points (repeatable; default: all points)
    #[arg(long = "point")]
    points: Vec<String>,

    /// Candidate polynomial name (contact-order)
    #[arg(long)]
    candidate: Option<String>,

    /// Degree for extactic and first-integral searches
    #[arg(long, default_value_t = 1)]
    degree: u32,

    /// Truncation degree for invariant and profile analyses
    #[arg(long = "max-degree", default_value_t = 4)]
    max_degree: u32,

    /// Word-length cap for contact-order searches
    #[arg(long = "word-cap", default_value_t = 12)]
    word_cap: usize,

    /// Span cap for infinite-order certificates
    #[arg(long = "span-cap", default_value_t = 64)]
    span_cap: usize,

    /// Write the JSON report to this path (text always goes to stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    let text = std::fs::read_to_string(&cli.file)
        .map_err(|e| format!("cannot read {}: {e}", cli.file.display()))?;
    let file = folia::parse_foliation_file(&text).map_err(|e| e.to_string())?;
    let options = AnalysisOptions {
        max_degree: cli.max_degree,
        word_cap: cli.word_cap,
        span_cap: cli.span_cap,
        degree: cli.degree,
        points: cli.points.clone(),
        candidate: cli.candidate.clone(),
        ..Default::default()
    };
    let report =
        folia::run_analysis(&file, cli.command.into(), &options).map_err(|e| e.to_string())?;
    emit_report(&report, ReportFormat::Text, None).map_err(|e| e.to_string())?;
    if let Some(path) = &cli.json {
        emit_report(&report, ReportFormat::Json, Some(path)).map_err(|e| e.to_string())?;
    }
    Ok(())
}
