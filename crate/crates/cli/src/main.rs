//! `planar`: classify power maps `x -> x^m` over odd-characteristic
//! finite fields and reproduce the supporting computations.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{CliError, ReportEnvelope};

#[derive(Parser)]
#[command(
    name = "planar",
    version,
    about = "Planarity of power maps over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singularity table, intersection bounds and verdict for one exponent.
    Analyze(AnalyzeArgs),
    /// Verdict only.
    Classify(ClassifyArgs),
    /// Brute-force PN/APN test of x^m over F_{p^n}.
    PnTest(PnTestArgs),
    /// Printed numeric tables next to recomputed values.
    Tables(TablesArgs),
    /// PN grid over a range of exponents and extension degrees.
    Scan(ScanArgs),
    /// Bounded factor search of the curve, Frobenius orbits and point counts.
    Factor(FactorArgs),
}

#[derive(Args, Clone, Copy)]
pub struct Format {
    /// Emit the JSON report envelope.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Clone, Copy)]
pub struct JsonOnly {
    /// Emit the JSON report envelope.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'm')]
    pub m: u64,
    /// Enumerate affine singular points over F_{p^s}.
    #[arg(long = "s")]
    pub s: Option<usize>,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'm')]
    pub m: u64,
    #[command(flatten)]
    pub format: JsonOnly,
}

#[derive(Args)]
pub struct PnTestArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 'm')]
    pub m: u64,
    /// Test every nonzero shift a, not only a = 1.
    #[arg(long)]
    pub all_a: bool,
    #[command(flatten)]
    pub format: JsonOnly,
}

#[derive(Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub format: JsonOnly,
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(long, default_value_t = 2)]
    pub m_min: u64,
    #[arg(long)]
    pub m_max: u64,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Args)]
pub struct FactorArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'm')]
    pub m: u64,
    /// Search for factors with coefficients in F_{p^s}.
    #[arg(long = "s", default_value_t = 2)]
    pub s: usize,
    /// Largest total degree of a candidate factor.
    #[arg(long, default_value_t = 1)]
    pub deg_cap: u32,
    /// Count points over F_{p^n} for n = 1..=n-max.
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    #[command(flatten)]
    pub format: Format,
}

/// What a command produced: the envelope, plus its text and CSV renderings.
pub struct Output {
    pub envelope: ReportEnvelope,
    pub text: String,
    pub csv: Option<String>,
    /// Exit status for a completed run that still has to signal failure.
    pub failed: bool,
}

fn run(cli: Cli) -> Result<(Output, Format), CliError> {
    match cli.command {
        Command::Analyze(a) => Ok((commands::analyze(&a)?, a.format)),
        Command::Classify(a) => Ok((commands::classify(&a)?, json(a.format))),
        Command::PnTest(a) => Ok((commands::pn_test(&a)?, json(a.format))),
        Command::Tables(a) => Ok((commands::tables()?, json(a.format))),
        Command::Scan(a) => Ok((commands::scan(&a)?, a.format)),
        Command::Factor(a) => Ok((commands::factor(&a)?, a.format)),
    }
}

fn json(f: JsonOnly) -> Format {
    Format {
        json: f.json,
        csv: false,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, format)) => {
            let body = if format.json {
                match serde_json::to_string_pretty(&out.envelope) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            } else if format.csv {
                match out.csv {
                    Some(c) => c,
                    None => {
                        eprintln!("error: this command has no CSV form");
                        return ExitCode::from(2);
                    }
                }
            } else {
                out.text
            };
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if !format.json {
                for w in &out.envelope.warnings {
                    eprintln!("warning: {w}");
                }
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
