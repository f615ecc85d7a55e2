#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use fslp_core::{DerivKind, FslpError};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fslp", version, about = "Finite element eigensolver for fractional Sturm-Liouville problems")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "FSLP_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Output directory.
    #[arg(long, global = true, default_value = "fslp-out")]
    out: PathBuf,
    /// Rounded human-readable console tables.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the stiffness and mass matrices.
    Assemble(commands::AssembleArgs),
    /// Smallest eigenvalues on one mesh.
    Solve(commands::SolveArgs),
    /// Convergence table over mesh levels against a Richardson reference.
    Converge(commands::ConvergeArgs),
    /// Mittag-Leffler zeros and a log|E| grid.
    Mlzeros(commands::MlzerosArgs),
    /// Track eigenvalues across a grid of orders.
    Scan(commands::ScanArgs),
    /// One eigenfunction sampled at the mesh nodes.
    Eigenfunction(commands::EigenfunctionArgs),
    /// Run the oracle verification suite.
    Verify(commands::VerifyArgs),
}

/// Parameters shared by commands that build a single problem.
#[derive(Args, Serialize, Clone, Debug)]
pub struct ProblemArgs {
    /// Fractional order in (1, 2], decimal or fraction ("5/3").
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: f64,
    /// caputo or rl.
    #[arg(long, default_value = "rl", value_parser = parse_kind)]
    pub deriv: DerivKind,
    /// q1, q2, q3 or a JSON piecewise-polynomial file.
    #[arg(long, default_value = "q1")]
    pub potential: String,
    /// Interior mesh nodes.
    #[arg(long)]
    pub m: usize,
    /// Graded mesh x_i = (i/(m+1))^g.
    #[arg(long)]
    pub grading: Option<f64>,
}

pub fn parse_alpha(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            n / d
        }
        None => s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_kind(s: &str) -> Result<DerivKind, String> {
    s.parse()
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Solver(String),
    Verify(usize),
}

impl From<FslpError> for CliError {
    fn from(e: FslpError) -> Self {
        match e {
            FslpError::InvalidInput(_) | FslpError::Capacity(..) => CliError::Validation(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Solver(format!("i/o: {e}"))
    }
}

pub struct Globals {
    pub out: PathBuf,
    pub pretty: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            log::warn!("thread pool: {e}");
        }
    }
    let g = Globals { out: cli.out, pretty: cli.pretty };
    let result = match cli.command {
        Command::Assemble(a) => commands::assemble(&g, a),
        Command::Solve(a) => commands::solve(&g, a),
        Command::Converge(a) => commands::converge(&g, a),
        Command::Mlzeros(a) => commands::mlzeros(&g, a),
        Command::Scan(a) => commands::scan(&g, a),
        Command::Eigenfunction(a) => commands::eigenfunction(&g, a),
        Command::Verify(a) => commands::verify(&g, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(m)) => {
            eprintln!("solver failure: {m}");
            ExitCode::from(3)
        }
        Err(CliError::Verify(n)) => {
            eprintln!("verify: {n} checks failed");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_fractions() {
        assert_eq!(parse_alpha("5/3").unwrap(), 5.0 / 3.0);
        assert_eq!(parse_alpha("1.75").unwrap(), 1.75);
        assert!(parse_alpha("x").is_err());
        assert!(parse_alpha("1/0").is_err());
    }
}
