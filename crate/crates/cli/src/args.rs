use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wfg_core::TreeStrategy;

#[derive(Debug, Parser)]
#[command(name = "wfg", version, about = "Weighted fundamental groups of weighted simplicial complexes")]
pub struct Cli {
  /// Emit a JSON report instead of text.
  #[arg(long, global = true)]
  pub json: bool,

  #[command(subcommand)]
  pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
  /// Check a complex against every structural rule.
  Validate(Input),
  /// Compute a maximal tree and print the complex carrying it.
  Tree(TreeArgs),
  /// Print the presentation of the weighted fundamental group.
  Present(WithTree),
  /// Cyclic factorization (requires the exactly-two condition).
  Classify(WithTree),
  /// Abelianization via Smith normal form.
  Abelianize(WithTree),
  /// Weighted homology of a graph.
  Homology(Input),
  /// Free ranks of the lower central series quotients.
  Lcs(LcsArgs),
  /// Check a van Kampen cover and compare both presentations.
  Vankampen(Input),
  /// Birth/death events along a filtration.
  Filtration(FiltrationArgs),
  /// Hamiltonian paths as maximal trees, and whether the group tells them apart.
  Hamiltonian(Input),
}

#[derive(Debug, Args)]
pub struct Input {
  pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TreeChoice {
  Bfs,
  KruskalMin,
  KruskalMax,
}

impl From<TreeChoice> for TreeStrategy {
  fn from(c: TreeChoice) -> Self {
    match c {
      TreeChoice::Bfs => TreeStrategy::Bfs,
      TreeChoice::KruskalMin => TreeStrategy::KruskalMin,
      TreeChoice::KruskalMax => TreeStrategy::KruskalMax,
    }
  }
}

#[derive(Debug, Args)]
pub struct TreeArgs {
  pub input: PathBuf,
  #[arg(long, value_enum, default_value = "bfs")]
  pub tree:  TreeChoice,
}

#[derive(Debug, Args)]
pub struct WithTree {
  pub input: PathBuf,
  /// Replace the stored tree (if any) with a computed one.
  #[arg(long, value_enum)]
  pub tree:  Option<TreeChoice>,
}

#[derive(Debug, Args)]
pub struct LcsArgs {
  #[command(flatten)]
  pub complex:      WithTree,
  #[arg(long, default_value_t = 6)]
  pub max_n:        usize,
  #[arg(long, default_value_t = 16)]
  pub series_order: usize,
}

#[derive(Debug, Args)]
pub struct FiltrationArgs {
  pub input:            PathBuf,
  /// Diff abelianizations when a stage fails the exactly-two condition.
  #[arg(long)]
  pub fallback_abelian: bool,
}
