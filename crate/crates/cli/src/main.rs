//! `kmsgraph`: KMS states of finite directed graphs from the command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 unreadable input,
//! 3 inadmissible temperature or invalid vector, 4 failed verification.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmsgraph::{KmsError, OracleError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Kms(#[from] KmsError),
    #[error(transparent)]
    Oracle(OracleError),
    /// Carries the already rendered report.
    #[error("verification failed: {failed}")]
    Verification { failed: String, output: String },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Kms(k) => CliError::Kms(k),
            other => CliError::Oracle(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Kms(KmsError::Graph(_)) => 2,
            CliError::Kms(_) => 3,
            CliError::Verification { .. } => 4,
            CliError::Oracle(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kmsgraph", version, about = "KMS states of the gauge dynamics on graph Toeplitz algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structure, spectral radius and critical inverse temperature.
    Analyze(Common),
    /// y-vector and extreme points of the simplex at an admissible temperature.
    Simplex {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temperature: TemperatureArgs,
    },
    /// The state φ_ε for ε in the simplex.
    State {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temperature: TemperatureArgs,
        #[command(flatten)]
        vector: EpsilonArgs,
        /// Rescale --epsilon onto the simplex instead of requiring ε·y = 1.
        #[arg(long)]
        normalize: bool,
    },
    /// The critical state at β = ln ρ(A); --epsilon is read as the measure m.
    Critical {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "SPEC")]
        epsilon: Option<String>,
    },
    /// The ground (KMS_∞) state for a probability vector ε.
    Ground {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        vector: EpsilonArgs,
    },
    /// Check φ_ε against the truncated path-space representation.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temperature: TemperatureArgs,
        #[command(flatten)]
        vector: EpsilonArgs,
        /// Truncation depth; chosen automatically when omitted.
        #[arg(long)]
        depth: Option<usize>,
        /// Longest path in the sampled spanning elements.
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// y and m along an ε-ray over a grid of inverse temperatures.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated inverse temperatures.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        betas: Vec<f64>,
        /// Direction of the ray; defaults to the uniform vector.
        #[arg(long, value_name = "SPEC")]
        epsilon: Option<String>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Normalization tolerance for ε·y = 1 and Σε = 1.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TemperatureArgs {
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
}

impl TemperatureArgs {
    fn q(&self) -> Result<f64, CliError> {
        let q = match (self.beta, self.q) {
            (Some(beta), None) => (-beta).exp(),
            (None, Some(q)) => q,
            _ => return Err(CliError::Usage("give exactly one of --beta and --q".into())),
        };
        if !(q.is_finite() && q > 0.0) {
            return Err(KmsError::NonPositiveQ(q).into());
        }
        Ok(q)
    }
}

#[derive(Debug, Args)]
struct EpsilonArgs {
    /// Inline JSON object or array, a file with the same, or `extreme:<vertex>`.
    #[arg(long, value_name = "SPEC")]
    epsilon: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(common) => {
            let graph = input::load_graph(&common.graph)?;
            emit(common, &commands::analyze(&graph)?)
        }
        Command::Simplex { common, temperature } => {
            let graph = input::load_graph(&common.graph)?;
            emit(common, &commands::simplex(&graph, temperature.q()?, common.format)?)
        }
        Command::State {
            common,
            temperature,
            vector,
            normalize,
        } => {
            let graph = input::load_graph(&common.graph)?;
            let text = commands::state(&graph, temperature.q()?, &vector.epsilon, *normalize, common.tol)?;
            emit(common, &text)
        }
        Command::Critical { common, epsilon } => {
            let graph = input::load_graph(&common.graph)?;
            emit(common, &commands::critical(&graph, epsilon.as_deref())?)
        }
        Command::Ground { common, vector } => {
            let graph = input::load_graph(&common.graph)?;
            emit(common, &commands::ground(&graph, &vector.epsilon, common.tol)?)
        }
        Command::Verify {
            common,
            temperature,
            vector,
            depth,
            max_len,
        } => {
            let graph = input::load_graph(&common.graph)?;
            let req = commands::VerifyRequest {
                q: temperature.q()?,
                epsilon: &vector.epsilon,
                depth: *depth,
                max_len: *max_len,
                tol: common.tol,
            };
            match commands::verify(&graph, &req) {
                Err(CliError::Verification { failed, output }) => {
                    emit(common, &output)?;
                    Err(CliError::Verification {
                        failed,
                        output: String::new(),
                    })
                }
                other => emit(common, &other?),
            }
        }
        Command::Sweep { common, betas, epsilon } => {
            let graph = input::load_graph(&common.graph)?;
            emit(common, &commands::sweep(&graph, betas, epsilon.as_deref(), common.format)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
