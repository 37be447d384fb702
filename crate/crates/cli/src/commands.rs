//! Argument parsing and the four subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use evoderive_core::theory;
use evoderive_core::{
    EvolutionAlgebra, FieldError, FieldSpec, SolverConfig, SolverError, DEFAULT_MAX_N,
};

use crate::batch::{run_batch, BatchConfig};
use crate::gen::{generate, GenError, GenOptions};
use crate::input::{load_graph, load_matrix, InputError};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "evoderive",
    version,
    about = "Derivations of evolution algebras attached to graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the derivation space of a graph and run every structural check.
    Analyze {
        graph: PathBuf,
        /// Field characteristic: 0 for the rationals, or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Largest vertex count the solver accepts.
        #[arg(long, env = "EVODERIVE_MAX_N", default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Decide whether a matrix is a derivation, by three independent tests.
    Verify {
        graph: PathBuf,
        matrix: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Print a seeded random graph in edge-list format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample until the graph is connected.
        #[arg(long)]
        connected: bool,
        #[arg(long, env = "EVODERIVE_MAX_N", default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run the randomised property suite.
    Batch {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Comma-separated characteristics.
        #[arg(long, value_delimiter = ',', default_values_t = [0u64, 2, 3, 5, 7])]
        chars: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random test matrices per graph and characteristic.
        #[arg(long, default_value_t = 100)]
        matrices: usize,
        /// Random relabellings per graph and characteristic.
        #[arg(long, default_value_t = 5)]
        permutations: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}")]
    Usage(String),
    #[error("property check failed")]
    Property,
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Property => EXIT_PROPERTY,
            _ => EXIT_INPUT,
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(
    out: &mut dyn Write,
    graph: PathBuf,
    characteristic: u64,
    json: bool,
    max_n: usize,
) -> Result<(), CliError> {
    let field = FieldSpec::new(characteristic)?;
    let g = load_graph(&graph)?;
    let report = Report::build(&g, field, SolverConfig { max_n })?;
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(())
}

fn verify(
    out: &mut dyn Write,
    graph: PathBuf,
    matrix: PathBuf,
    characteristic: u64,
) -> Result<(), CliError> {
    let field = FieldSpec::new(characteristic)?;
    let g = load_graph(&graph)?;
    let d = load_matrix(&matrix, g.vertex_count(), field)?;
    let tp = g.twin_partition();
    let alg = EvolutionAlgebra::new(g, field);
    let leibniz = alg.is_derivation_leibniz(&d).map_err(SolverError::from)?;
    let conditions = alg
        .is_derivation_conditions(&d)
        .map_err(SolverError::from)?;
    writeln!(out, "leibniz: {}", yes_no(leibniz))?;
    writeln!(out, "conditions: {}", yes_no(conditions))?;
    let characterization = theory::check_theorem_characterization(&alg, &d, &tp);
    match &characterization {
        Ok(b) => writeln!(out, "characterization: {}", yes_no(*b))?,
        Err(e) => writeln!(out, "characterization: not applicable ({e})")?,
    }
    let agree = leibniz == conditions && characterization.as_ref().map_or(true, |c| *c == leibniz);
    if !agree {
        writeln!(out, "derivation: disagreement between tests")?;
        return Err(CliError::Property);
    }
    writeln!(out, "derivation: {}", yes_no(leibniz))?;
    Ok(())
}

fn batch(out: &mut dyn Write, config: BatchConfig, json: bool) -> Result<(), CliError> {
    let summary = run_batch(&config);
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&summary).expect("plain data")
        )?;
    } else {
        write!(out, "{}", summary.render_text())?;
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Property)
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            graph,
            characteristic,
            json,
            max_n,
        } => analyze(out, graph, characteristic, json, max_n),
        Command::Verify {
            graph,
            matrix,
            characteristic,
        } => verify(out, graph, matrix, characteristic),
        Command::Gen {
            n,
            edge_prob,
            seed,
            connected,
            max_n,
        } => {
            let g = generate(
                &GenOptions {
                    n,
                    edge_prob,
                    seed,
                    connected,
                },
                max_n,
            )?;
            write!(out, "{}", g.to_edge_list())?;
            Ok(())
        }
        Command::Batch {
            trials,
            max_n,
            chars,
            seed,
            matrices,
            permutations,
            json,
        } => {
            if max_n == 0 || max_n > DEFAULT_MAX_N {
                return Err(CliError::Usage(format!(
                    "--max-n must be between 1 and {DEFAULT_MAX_N}"
                )));
            }
            let chars = chars
                .into_iter()
                .map(FieldSpec::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let config = BatchConfig {
                trials,
                max_n,
                chars,
                seed,
                matrices_per_graph: matrices,
                permutations,
            };
            batch(out, config, json)
        }
    }
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if !matches!(e, CliError::Property) {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}
