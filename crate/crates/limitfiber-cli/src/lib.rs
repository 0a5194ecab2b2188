//! Batch front end for `limitfiber`: reads JSON, writes JSON.
//!
//! Every index in the JSON files (vectors, hyperplanes, vertices,
//! components) is 1-based.

pub mod input;
mod report;

use clap::{Args, Parser, Subcommand};
use limitfiber::building::BuildingError;
use limitfiber::matroid::MatroidError;
use limitfiber::membrane::MembraneError;
use limitfiber::scalar::BaseField;
use limitfiber::specialfiber::FiberError;
use serde_json::{json, Value};
use std::fmt::Debug;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "limitfiber", version, about = "Limits of hyperplane arrangements over k((z))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Half-width of the search window.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
    pub window: i64,
    /// Number of series terms in expansions.
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    pub prec: u64,
    /// Residue field, overriding the input file: Q or Fp:<p>.
    #[arg(long, global = true, value_parser = input::field_from_str)]
    pub field: Option<BaseField>,
    /// Input file (alternative to the positional argument).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    pub path: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stable lattices with their Psi values.
    Stab(Input),
    /// Convex hull of the listed classes.
    Hull(Input),
    /// GIT-stable classes and their matroid decomposition.
    Gitstab(Input),
    /// Dual complex of the special fiber with its boundary table.
    Fiber(Input),
    /// Limit surface for r = 3.
    Surface(Input),
    /// Tropical checks.
    #[command(subcommand)]
    Trop(Trop),
    /// Dimension count for a central matroid witness.
    Audit(Input),
    /// H^0 and H^1 of a matroid decomposition.
    Cohomology(Input),
    /// Lax ordering of a point configuration.
    Lax(Input),
    /// Central decomposition of a family of index sets.
    Central(Input),
    /// Cross-ratios and their limits.
    Crossratio(Input),
}

#[derive(Debug, Subcommand)]
pub enum Trop {
    /// Membrane against tropical row space on the window.
    Verify(Input),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{message}")]
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Parse(_) => "Parse",
            CliError::Io(_) => "Io",
            CliError::Domain { kind, .. } => kind,
        };
        json!({ "error": { "kind": kind, "message": self.to_string() } })
    }
}

fn variant_name<E: Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(s.len());
    s[..end].to_string()
}

/// Wrapper variants are unwrapped so the kind names the actual failure.
fn domain<E: Debug + std::fmt::Display>(e: &E) -> CliError {
    let mut kind = variant_name(e);
    let dbg = format!("{e:?}");
    for wrapper in ["Membrane(", "Building(", "Scalar(", "Fiber("] {
        if let Some(inner) = dbg.strip_prefix(wrapper) {
            let inner_kind: String = inner.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
            if !inner_kind.is_empty() {
                kind = inner_kind;
            }
        }
    }
    CliError::Domain { kind, message: e.to_string() }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                domain(&e)
            }
        }
    )*};
}

domain_from!(MembraneError, MatroidError, FiberError, BuildingError);

impl Cli {
    fn input_path(&self) -> Result<PathBuf, CliError> {
        let positional = match &self.command {
            Command::Stab(i)
            | Command::Hull(i)
            | Command::Gitstab(i)
            | Command::Fiber(i)
            | Command::Surface(i)
            | Command::Audit(i)
            | Command::Cohomology(i)
            | Command::Lax(i)
            | Command::Central(i)
            | Command::Crossratio(i)
            | Command::Trop(Trop::Verify(i)) => i.path.clone(),
        };
        match (positional, self.json.clone()) {
            (Some(_), Some(_)) => Err(CliError::Parse("give the input either positionally or with --json".into())),
            (Some(p), None) | (None, Some(p)) => Ok(p),
            (None, None) => Err(CliError::Parse("no input file".into())),
        }
    }
}

pub fn read_input(cli: &Cli) -> Result<Value, CliError> {
    let path = cli.input_path()?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// The report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let v = read_input(cli)?;
    execute_on(cli, &v)
}

pub fn execute_on(cli: &Cli, v: &Value) -> Result<Value, CliError> {
    match &cli.command {
        Command::Stab(_) => report::stab(&input::arrangement(v, cli.field)?),
        Command::Hull(_) => report::hull(v),
        Command::Gitstab(_) => report::gitstab(&input::arrangement(v, cli.field)?, cli.window),
        Command::Fiber(_) => report::fiber(&input::arrangement(v, cli.field)?, v),
        Command::Surface(_) => report::surface(&input::arrangement(v, cli.field)?, cli.window),
        Command::Trop(Trop::Verify(_)) => Ok(report::trop_verify(&input::arrangement(v, cli.field)?, cli.window)),
        Command::Audit(_) => report::audit(&input::witness(v, cli.field)?),
        Command::Cohomology(_) => Ok(report::cohomology(&input::decomposition(v)?)),
        Command::Lax(_) => Ok(report::lax(&input::points(v, cli.field)?)),
        Command::Central(_) => report::central(v),
        Command::Crossratio(_) => report::crossratio(v, cli.prec as usize),
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs the command and writes the report; returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    let (code, body) = match execute(cli) {
        Ok(v) => (0, render(&v)),
        Err(e) => (e.exit_code(), render(&e.to_json())),
    };
    match &cli.out {
        Some(p) if code == 0 => {
            if let Err(e) = std::fs::write(p, &body) {
                eprintln!("{}: {e}", p.display());
                return 2;
            }
        }
        _ => print!("{body}"),
    }
    code
}
