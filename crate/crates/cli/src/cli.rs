//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use haarqmc::Mode;

use crate::config::{self, GenConfig, RunConfig, TablesConfig};
use crate::gen::GenKind;
use crate::Result;

#[derive(Debug, Parser)]
#[command(
    name = "haarqmc",
    version,
    about = "Quasi-random orthogonal matrices and Crofton estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every cell of the comparison tables and write CSV and JSON files.
    ReproduceTables(TablesArgs),
    /// Estimate I_{n,k} for one polytope and print the convergence trace.
    Estimate(EstimateArgs),
    /// Print a prefix of one of the sequences as CSV.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[command(flatten)]
        args: GenArgs,
    },
    /// Same as `gen sphere`.
    GenSphere(GenArgs),
    /// Same as `gen ortho`.
    GenOrtho(GenArgs),
    /// Same as `gen grassmann`.
    GenGrassmann(GenArgs),
    /// Same as `gen udsg`.
    GenUdsg(GenArgs),
}

fn fresh_seed() -> u64 {
    let seed = rand::random();
    eprintln!("using fresh seed {seed}");
    seed
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// JSON run configuration; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Built-in polytope (3-cube, 3-simplex, k-icosahedron, 4-cube, 4-simplex)
    /// or r-polytope-<n>d-<count>v-seed<seed>.
    #[arg(long, conflicts_with = "polytope_file")]
    pub polytope: Option<String>,
    /// Polytope JSON file: {"n": .., "label": .., "vertices": [[..], ..]}.
    #[arg(long)]
    pub polytope_file: Option<PathBuf>,
    /// Ambient dimension, checked against the polytope.
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace dimension, 1 <= k <= n - 1 with n - k <= 3.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of samples N.
    #[arg(long, visible_alias = "N")]
    pub samples: Option<u64>,
    /// random, qmc or qmc-noveech (also r, qr, qr-noveech).
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Seed of the random mode.
    #[arg(long, conflicts_with = "fresh_seed")]
    pub seed: Option<u64>,
    /// Draw the random-mode seed from the operating system.
    #[arg(long)]
    pub fresh_seed: bool,
    /// Comma-separated sample counts at which to report partial means.
    #[arg(long, value_delimiter = ',')]
    pub trace_points: Option<Vec<u64>>,
    /// Write the CSV to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl EstimateArgs {
    pub fn into_config(self) -> Result<RunConfig> {
        let mut c: RunConfig = match &self.config {
            Some(path) => config::load(path)?,
            None => RunConfig::default(),
        };
        if self.polytope.is_some() || self.polytope_file.is_some() {
            c.polytope = self.polytope;
            c.polytope_file = self.polytope_file;
        }
        c.n = self.n.or(c.n);
        c.k = self.k.unwrap_or(c.k);
        c.samples = self.samples.unwrap_or(c.samples);
        c.mode = self.mode.unwrap_or(c.mode);
        c.seed = if self.fresh_seed {
            fresh_seed()
        } else {
            self.seed.unwrap_or(c.seed)
        };
        c.trace_points = self.trace_points.unwrap_or(c.trace_points);
        c.output = self.output.or(c.output);
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON generator configuration; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Dimension (default 3).
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace dimension for grassmann (default 1).
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of records (default 10).
    #[arg(long)]
    pub count: Option<u64>,
    /// qr (= qmc), qr-noveech or random.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Seed of the random mode.
    #[arg(long, conflicts_with = "fresh_seed")]
    pub seed: Option<u64>,
    /// Draw the random-mode seed from the operating system.
    #[arg(long)]
    pub fresh_seed: bool,
    /// Digit-permutation seed of the scrambled Halton inputs.
    #[arg(long)]
    pub permutation_seed: Option<u64>,
    /// Write the CSV to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl GenArgs {
    pub fn into_config(self) -> Result<GenConfig> {
        let mut c: GenConfig = match &self.config {
            Some(path) => config::load(path)?,
            None => GenConfig::default(),
        };
        c.n = self.n.unwrap_or(c.n);
        c.k = self.k.unwrap_or(c.k);
        c.count = self.count.unwrap_or(c.count);
        c.mode = self.mode.unwrap_or(c.mode);
        c.seed = if self.fresh_seed {
            fresh_seed()
        } else {
            self.seed.unwrap_or(c.seed)
        };
        c.permutation_seed = self.permutation_seed.unwrap_or(c.permutation_seed);
        c.output = self.output.or(c.output);
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// JSON configuration; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for the CSV and JSON outputs (default `.`).
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Seed of the random-mode runs.
    #[arg(long, conflicts_with = "fresh_seed")]
    pub seed: Option<u64>,
    /// Draw the seed from the operating system.
    #[arg(long)]
    pub fresh_seed: bool,
    /// Digit-permutation seed of the scrambled Halton inputs.
    #[arg(long)]
    pub permutation_seed: Option<u64>,
}

impl TablesArgs {
    pub fn into_config(self) -> Result<TablesConfig> {
        let mut c: TablesConfig = match &self.config {
            Some(path) => config::load(path)?,
            None => TablesConfig::default(),
        };
        c.output_dir = self.output_dir.unwrap_or(c.output_dir);
        c.seed = if self.fresh_seed {
            fresh_seed()
        } else {
            self.seed.unwrap_or(c.seed)
        };
        c.permutation_seed = self.permutation_seed.unwrap_or(c.permutation_seed);
        Ok(c)
    }
}
