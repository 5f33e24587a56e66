//! `hypspec` command-line front end.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ConfigError;

#[derive(Debug, Parser)]
#[command(name = "hypspec", version, about = "Laplace spectra, zeta functions and determinants of hyperbolic surfaces")]
pub struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default `out`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dirichlet eigenvalues of −u″ + Vu = λu on [−L, L].
    Solve1d(Solve1dArgs),
    /// Dirichlet eigenvalues of a planar domain.
    SolveDomain(DomainArgs),
    /// Laplace eigenvalues of a closed hyperbolic surface.
    SolveSurface(SurfaceArgs),
    /// Primitive length spectrum up to a cutoff.
    LengthSpectrum(LengthArgs),
    /// Spectral zeta function at one or more real s.
    Zeta(ZetaArgs),
    /// Zeta-regularized determinant.
    Det(SelbergArgs),
    /// R_N curve and heat-kernel completeness certificate.
    VerifyHeat(HeatArgs),
    /// Riesz-mean test and Weyl-law fit.
    VerifyRiesz(RieszArgs),
}

#[derive(Debug, Args)]
pub struct Solve1dArgs {
    /// Built-in potential name or comma-separated polynomial coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub potential: Option<String>,
    #[arg(long)]
    pub half_length: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// `disk` or `ellipse`.
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub semi_axes: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub range: Option<Vec<f64>>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub range: Option<Vec<f64>>,
    /// Fixed number of modes per piece; windowed search when absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LengthArgs {
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long)]
    pub l_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SelbergArgs {
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long)]
    pub genus: Option<usize>,
    /// Eigenvalue CSV.
    #[arg(long)]
    pub eigenvalues: Option<PathBuf>,
    /// Length-spectrum file.
    #[arg(long)]
    pub lengths: Option<PathBuf>,
    #[arg(long)]
    pub l_max: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub n_heat: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub common: SelbergArgs,
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub s: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    #[command(flatten)]
    pub common: SelbergArgs,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long = "T")]
    pub big_t: Option<f64>,
    /// Use λ₀ … λ_N only.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RieszArgs {
    #[command(flatten)]
    pub common: SelbergArgs,
    /// Remove these eigenvalues before the test.
    #[arg(long, num_args = 1..)]
    pub remove: Option<Vec<f64>>,
}

fn report(kind: &str, err: &anyhow::Error) {
    let chain: Vec<String> = err.chain().map(|e| e.to_string()).collect();
    let v = serde_json::json!({ "error": { "kind": kind, "message": err.to_string(), "chain": chain } });
    eprintln!("{v}");
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
            report("config", &anyhow::anyhow!(e.to_string()));
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(manifest) => {
            println!("{}", manifest.display());
            ExitCode::SUCCESS
        }
        Err(e) if e.chain().any(|c| c.is::<ConfigError>()) => {
            report("config", &e);
            ExitCode::from(1)
        }
        Err(e) => {
            report("numerical", &e);
            ExitCode::from(2)
        }
    }
}
