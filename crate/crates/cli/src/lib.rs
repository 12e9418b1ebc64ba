//! Batch front-end: reads JSON job files, runs one computation, prints a JSON report.
//!
//! Reports are pretty-printed with sorted keys so that identical inputs give identical
//! bytes. Every report carries the torsion sign convention and the basis ordering rule.

pub mod commands;
pub mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use reidemeister::torsion::{BASIS_ORDER, SIGN_CONVENTION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Parse(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "reidemeister", version, about = "Refined Reidemeister torsion and related invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct TwistFlags {
    /// Euler structure: `identity`, a name from the complex file, or `cell=word;...`
    #[arg(long, default_value = "identity")]
    pub euler: String,
    /// Homology orientation sign.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub orient: String,
    /// Coefficient field, `Q` or `Q(t)`; overrides the field in the input file.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a complex (∂∂ = 0 in ℤ[π]) and optionally a local system on it.
    Check {
        complex: PathBuf,
        localsys: Option<PathBuf>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Refined torsion of a complex with local coefficients.
    Torsion {
        complex: PathBuf,
        localsys: PathBuf,
        #[command(flatten)]
        flags: TwistFlags,
    },
    /// Torsion of the adjoint system at a representation point.
    AdjointTorsion {
        complex: PathBuf,
        representation: PathBuf,
        #[command(flatten)]
        flags: TwistFlags,
    },
    /// Johnson's quadratic form of a spin structure.
    Johnson {
        surface: PathBuf,
        spin: PathBuf,
        /// Monodromy signs such as `-1,1`; all classes when omitted.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Arf invariant of a spin structure.
    Arf { surface: PathBuf, spin: PathBuf },
    /// Coefficients of J(x) = x/(eˣ − 1) and the determinant identity check.
    Todd {
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Mayer–Vietoris check for a glued complex at a representation point.
    GlueCheck { glue: PathBuf, representation: PathBuf },
}

/// Exit status and the text written to standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn conventions() -> Value {
    json!({ "sign_convention": SIGN_CONVENTION, "basis_order": BASIS_ORDER })
}

fn render(mut v: Value) -> String {
    if let Some(o) = v.as_object_mut() {
        o.insert("conventions".into(), conventions());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome {
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            let failed = report.get("status").and_then(Value::as_str) == Some("failed");
            Outcome { code: i32::from(failed), stdout: render(report) }
        }
        Err(e) => {
            let status = if e.exit_code() == 2 { "parse-error" } else { "invalid" };
            Outcome { code: e.exit_code(), stdout: render(json!({ "status": status, "error": e.to_string() })) }
        }
    }
}

/// Parses arguments as the binary does; clap's own usage errors exit with status 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome { code: e.exit_code(), stdout: e.to_string() },
    }
}
