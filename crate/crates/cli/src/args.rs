use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "pgnet",
    version,
    about = "Poisson-growth preferential attachment networks"
)]
pub struct Cli {
    /// File of `key = value` defaults; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a campaign of networks and fit each degree tail.
    Generate(GenerateArgs),
    /// Reproduce the five-row exponent summary for the reference settings.
    Table1(Table1Args),
    /// Stationary p(0), predicted exponent and expected degree distribution.
    Theory(TheoryArgs),
    /// Posterior sampling of (a, b, lambda) for an observed network.
    Fit(FitArgs),
    /// Degree-distribution points and the fitted power-law line.
    Distplot(DistplotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Pg,
    Ba,
    PgBinomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedNet {
    /// Two nodes joined by one edge.
    Pair,
    /// A single isolated node (the convention the likelihood conditions on).
    Single,
    /// Complete graph large enough for the model's draws without replacement.
    Clique,
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    /// Attachment offset: r(k) = k + a for k >= 1.
    #[arg(long = "a", allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Weight of degree-0 nodes (defaults to a).
    #[arg(long = "b", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Mean number of edges per new node.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Edges per node for the BA model.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, value_enum)]
    pub seed_net: Option<SeedNet>,
    /// Final network size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of replicates.
    #[arg(long)]
    pub nsim: Option<usize>,
    #[arg(long)]
    pub kmin: Option<u64>,
    /// Master seed; replicate r uses stream r.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Use 10^4 replicates.
    #[arg(long)]
    pub full_scale: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub nsim: Option<usize>,
    #[arg(long)]
    pub kmin: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the table as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub full_scale: bool,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Write the expected degree distribution as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Network size for the expected distribution.
    #[arg(long)]
    pub t: Option<u64>,
    /// Largest degree tracked by the expected distribution.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, value_enum)]
    pub seed_net: Option<SeedNet>,
    /// Also write the JSON result to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Network in the pgnet edge-list format.
    pub graph: PathBuf,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub burnin: Option<usize>,
    #[arg(long)]
    pub thin: Option<usize>,
    /// Constrain a = b.
    #[arg(long)]
    pub lock_ab: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Arrival-order transpositions proposed per iteration.
    #[arg(long)]
    pub swaps: Option<usize>,
    /// Dump the arrival order with every k-th retained sample (0 = never).
    #[arg(long)]
    pub sigma_every: Option<usize>,
    #[arg(long)]
    pub step_a: Option<f64>,
    #[arg(long)]
    pub step_b: Option<f64>,
    #[arg(long)]
    pub step_lambda: Option<f64>,
    /// Prior mean of lambda.
    #[arg(long)]
    pub prior_lambda: Option<f64>,
    /// Prior mean of b.
    #[arg(long)]
    pub prior_b: Option<f64>,
    /// Prior mean of 1 + a.
    #[arg(long)]
    pub prior_a: Option<f64>,
    /// Histogram bins for the marginal posterior densities.
    #[arg(long)]
    pub bins: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistplotArgs {
    /// Graph files, or directories whose `.txt` files are all read.
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub kmin: Option<u64>,
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
