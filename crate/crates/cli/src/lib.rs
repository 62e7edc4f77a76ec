//! Command-line front end: parses input documents, runs one job and renders
//! a [`Report`]. Exit codes are 0 on success, 1 when a validator or a
//! cross-check fails, 2 when the input cannot be parsed.

pub mod commands;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{DegreeRecord, Report, Section};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) | CliError::Compute(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl SignArg {
    pub fn value(self) -> i8 {
        match self {
            SignArg::Plus => 1,
            SignArg::Minus => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SignArg::Plus => "+",
            SignArg::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bicomplex,
    Quotient,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "reflexive", version, about = "Reflexive homology of involutive algebras, groups and reflexive sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON document: an algebra, a group table, a reflexive set or tensor generators.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Z, Q, F<p> or Fp:<p>; overrides the ring named in the input.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true)]
    pub max_weight: Option<usize>,
    #[arg(long, global = true, default_value_t = 2)]
    pub matrix_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Method::Bicomplex)]
    pub method: Method,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Split HR of the group algebra along conjugacy classes and compare.
    #[arg(long, global = true)]
    pub decompose: bool,
    /// Compare against closed forms and independent routes where available.
    #[arg(long, global = true)]
    pub cross_check: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflexive homology of an algebra (the ground ring by default) or a reflexive set.
    Compute,
    /// Check the axioms of an input document.
    Validate,
    /// Reflexive homology of a finite group.
    Group,
    /// Weight-graded reflexive homology of a tensor algebra.
    Tensor,
    /// Compare an algebra with its matrix algebra.
    Morita,
    /// Hyperhomology of complexes built from one module.
    Hyper,
    /// Run the full verification battery.
    Suite {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one job; the report goes to stdout, errors to stderr.
pub fn run(cli: &Cli) -> Output {
    match commands::dispatch(cli) {
        Ok(report) => Output {
            code: if report.passed() { 0 } else { 1 },
            stdout: match cli.format {
                Format::Table => report.table(),
                Format::Machine => report.machine(),
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
