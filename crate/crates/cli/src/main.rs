//! `mta-kit`: batch verification of Zhu algebras, mode transition algebras
//! and Verma modules for the Heisenberg and Virasoro algebras.
//!
//! Exit status: 0 when every check passes, 1 on a configuration error,
//! 2 when a mathematical verification fails.

mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use mtakit::liealg::AlgebraKind;
use mtakit::verma::Param;

use crate::report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "mta-kit",
    version,
    about = "Exact computations with higher Zhu algebras and mode transition algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Higher level Zhu algebras A_d.
    Zhu(ZhuArgs),
    /// Mode transition algebras A_{d,-d}.
    Mta(MtaArgs),
    /// Generalized Verma modules.
    Verma(VermaArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// heisenberg or virasoro
    #[arg(long, value_parser = parse_algebra)]
    pub algebra: AlgebraKind,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for parallel sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Largest Heisenberg degree accepted without complaint.
    #[arg(long, default_value_t = 8)]
    pub cap: u32,
    /// Abort once an intermediate result has more terms than this.
    #[arg(long, env = "MTAKIT_MAX_TERMS")]
    pub max_terms: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ZhuArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    /// Mode window D for the Virasoro iterate sum.
    #[arg(long, default_value_t = 8)]
    pub window: u32,
    /// Include the full multiplication table (Heisenberg).
    #[arg(long)]
    pub table: bool,
}

#[derive(Args, Debug)]
pub struct MtaArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub find_identity: bool,
    #[arg(long, value_enum)]
    pub verify: Option<Verify>,
    /// Upper level for the rank and splitting sweep.
    #[arg(long)]
    pub max_level: Option<u32>,
    /// Upper degree for the strong identity equations.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Mode window |n| <= window for the strong identity equations.
    #[arg(long)]
    pub window: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VermaArgs {
    #[command(flatten)]
    pub common: Common,
    /// Eigenvalue of H_0 on w0: a rational or `formal`.
    #[arg(long)]
    pub lambda: Option<Param>,
    /// Eigenvalue of L_0 on w0: a rational or `formal`.
    #[arg(long)]
    pub h: Option<Param>,
    /// Central charge: a rational or `formal`.
    #[arg(long)]
    pub c: Option<Param>,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Compute singular vectors in each degree.
    #[arg(long)]
    pub singular: bool,
    /// Check that the identity of A_{d,-d} acts as 1 on degree d.
    #[arg(long)]
    pub unital: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    StrongIdentity,
    Splitting,
    AddabboBarron,
    Structure,
}

fn parse_algebra(s: &str) -> Result<AlgebraKind, String> {
    match s {
        "heisenberg" => Ok(AlgebraKind::Heisenberg),
        "virasoro" => Ok(AlgebraKind::Virasoro),
        _ => Err(format!("unknown algebra `{s}` (expected heisenberg or virasoro)")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ExitCode::from(1),
                _ => {
                    eprintln!("{}", Cli::command().render_usage());
                    ExitCode::from(1)
                }
            };
        }
    };
    match run::execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}
