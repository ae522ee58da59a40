//! Library side of the `haarqmc` command-line tool: argument parsing,
//! run configurations and the commands themselves.

pub mod cli;
pub mod config;
pub mod estimate;
pub mod gen;
pub mod output;
pub mod tables;

use std::path::PathBuf;

use thiserror::Error;

pub use cli::{Cli, Command};
pub use config::{GenConfig, RunConfig, TablesConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] haarqmc::Error),

    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("cannot parse {path}: {source}")]
    Config {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the caller can fix by changing the input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(haarqmc::Error::Degenerate(_) | haarqmc::Error::NotUnit(_)) => 1,
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }

    /// Short stable identifier used in the error line.
    pub fn kind(&self) -> &'static str {
        use haarqmc::Error as E;
        match self {
            CliError::Core(E::UnknownPolytope(_)) => "unknown-polytope",
            CliError::Core(E::DimensionMismatch { .. }) => "dimension-mismatch",
            CliError::Core(E::Domain(_)) => "invalid-value",
            CliError::Core(E::Incompatible(_)) => "incompatible",
            CliError::Core(E::NotUnit(_) | E::Degenerate(_)) => "numerical",
            CliError::Usage(_) => "usage",
            CliError::Config { .. } => "config",
            CliError::Io { .. } => "io",
        }
    }

    /// One JSON object on a single line, e.g.
    /// `{"error":"unknown-polytope","exit_code":2,"message":"..."}`.
    pub fn to_line(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Parses and runs one invocation, returning what goes to stdout.
pub fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Estimate(args) => estimate::run(args.into_config()?),
        Command::ReproduceTables(args) => tables::run(&args.into_config()?),
        Command::Gen { kind, args } => gen::run(kind, &args.into_config()?),
        Command::GenSphere(args) => gen::run(gen::GenKind::Sphere, &args.into_config()?),
        Command::GenOrtho(args) => gen::run(gen::GenKind::Ortho, &args.into_config()?),
        Command::GenGrassmann(args) => gen::run(gen::GenKind::Grassmann, &args.into_config()?),
        Command::GenUdsg(args) => gen::run(gen::GenKind::Udsg, &args.into_config()?),
    }
}
