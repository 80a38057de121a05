//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deprit_core::normalize::Method;
use deprit_core::VarKind;

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "deprit", version, about = "Exact Lie-Deprit normalization of polynomial Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize a model and report the requested series.
    Run(RunArgs),
    /// List the operator words of the perturbed projector, resolvent or nilpotent at order n.
    Words {
        /// P, S or D
        kind: String,
        n: usize,
    },
    /// List the built-in models.
    Models,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Explicit,
    Deprit,
    Henrard,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Output {
    Generator,
    Normalized,
    Hori,
    Gustavson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Frame {
    Pq,
    Birkhoff,
}

impl Frame {
    pub fn kind(self) -> VarKind {
        match self {
            Frame::Pq => VarKind::Pq,
            Frame::Birkhoff => VarKind::Birkhoff,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Frame::Pq => "pq",
            Frame::Birkhoff => "birkhoff",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Built-in model name or path to a model file.
    #[arg(long)]
    pub model: String,
    /// Normalization order N.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Explicit)]
    pub method: MethodArg,
    /// Series to report; defaults to `normalized`, or nothing with --bench.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Vec<Output>,
    #[arg(long, value_enum, default_value_t = Frame::Pq)]
    pub frame: Frame,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Time every selected method at each order from --bench-min-order to --order.
    #[arg(long)]
    pub bench: bool,
    #[arg(long, default_value_t = 1)]
    pub bench_min_order: u32,
    /// Leading ε power s of the Hori integral; defaults to the model's own.
    #[arg(long)]
    pub hori_power: Option<u32>,
}

/// Validated run settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub model: String,
    pub order: u32,
    pub methods: Vec<Method>,
    pub outputs: Vec<Output>,
    pub frame: Frame,
    pub format: Format,
    pub bench: bool,
    pub bench_min_order: u32,
    pub hori_power: Option<u32>,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        if a.order == 0 {
            return Err(CliError::Usage("--order must be at least 1".into()));
        }
        if a.bench && !(1..=a.order).contains(&a.bench_min_order) {
            return Err(CliError::Usage("--bench-min-order must lie in 1..=--order".into()));
        }
        if a.hori_power.is_some_and(|s| s > a.order) {
            return Err(CliError::Usage("--hori-power exceeds --order".into()));
        }
        let methods = match a.method {
            MethodArg::Explicit => vec![Method::Explicit],
            MethodArg::Deprit => vec![Method::Deprit],
            MethodArg::Henrard => vec![Method::Henrard],
            MethodArg::All => Method::ALL.to_vec(),
        };
        let mut outputs = a.outputs.clone();
        if outputs.is_empty() && !a.bench {
            outputs.push(Output::Normalized);
        }
        outputs.sort();
        outputs.dedup();
        Ok(RunConfig {
            model: a.model.clone(),
            order: a.order,
            methods,
            outputs,
            frame: a.frame,
            format: a.format,
            bench: a.bench,
            bench_min_order: a.bench_min_order,
            hori_power: a.hori_power,
        })
    }
}
