//! Command-line front end: algebra files in, JSON reports out.

pub mod commands;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "faithful",
    version,
    about = "Faithful modules of nilpotent Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity, nilpotency class, center, derived algebra and the
    /// lower bound on the faithful dimension.
    Check { path: PathBuf },
    /// Build a faithful module from a quotient of the enveloping algebra.
    Build {
        path: PathBuf,
        /// 1-based indices spanning the inner ideal, e.g. `2,3,4`.
        #[arg(long)]
        inner: Option<String>,
        /// `auto`, `m=<k>` for the span of inner basis elements with index
        /// at least k, or `none` for the plain order truncation.
        #[arg(long, default_value = "auto")]
        ideal: String,
        /// `lcs` (from the algebra's lower central series), `inner-lcs`, or
        /// `file:<path>`.
        #[arg(long, default_value = "lcs")]
        filtration: String,
        /// Order truncation at the given threshold.
        #[arg(long)]
        truncate: Option<u32>,
        /// Use the two-step construction (module of dimension dim L).
        #[arg(long)]
        two_step: bool,
    },
    /// Reduce a module (a JSON report from `build` or `reduce`) by
    /// quotients by invariants.
    Reduce {
        path: PathBuf,
        /// Also report the smallest dimension reachable (small modules only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// The 10-dimensional filiform family for 13 rational parameters.
    Filiform10 {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Values of the filiform dimension formula and related bounds.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i64>,
    },
}

/// A failed command: machine-readable class plus message.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub class: String,
    pub message: String,
    pub details: Option<Value>,
    pub exit_code: i32,
}

impl CliError {
    pub fn new(class: &str, message: impl Into<String>) -> Self {
        CliError {
            class: class.into(),
            message: message.into(),
            details: None,
            exit_code: 1,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            ..CliError::new("UsageError", message)
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut e = json!({"class": self.class, "message": self.message});
        if let Some(d) = &self.details {
            e["details"] = d.clone();
        }
        json!({ "error": e })
    }
}

pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
}

pub fn execute(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Check { path } => commands::check(&path),
        Command::Build {
            path,
            inner,
            ideal,
            filtration,
            truncate,
            two_step,
        } => commands::build(
            &path,
            &commands::BuildOptions {
                inner,
                ideal,
                filtration,
                truncate,
                two_step,
            },
        ),
        Command::Reduce { path, exhaustive } => commands::reduce(&path, exhaustive),
        Command::Filiform10 { params } => commands::filiform10(&params),
        Command::Bounds { n, beta } => commands::bounds(n, beta),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                return Outcome {
                    exit_code: 0,
                    stdout: e.to_string(),
                };
            }
            Err(CliError::usage(e.to_string().trim()))
        }
    };
    match result {
        Ok(v) => Outcome {
            exit_code: 0,
            stdout: pretty(&v),
        },
        Err(e) => Outcome {
            exit_code: e.exit_code,
            stdout: pretty(&e.to_json()),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
