//! `wfg`: command-line front end for weighted fundamental group computations.
//!
//! Exit codes: 0 on success, 1 on unreadable or invalid input, 2 when a mathematical
//! precondition fails (for example the exactly-two condition for `classify`).

mod args;
mod report;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;
use wfg_core::complex::validate;
use wfg_core::io::{complex_from_json, cover_from_json, filtration_from_json, InputError};
use wfg_core::{Error, TreeStrategy, WeightedComplex};

use crate::args::{Cli, TreeChoice, Verb};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
  #[error("{0}")]
  Input(String),

  #[error("{0}")]
  Math(String),
}

impl CliError {
  fn code(&self) -> u8 {
    match self {
      CliError::Input(_) => 1,
      CliError::Math(_) => 2,
    }
  }
}

fn is_math(e: &Error) -> bool {
  match e {
    Error::ConditionFailed(..)
    | Error::HasTriangles
    | Error::ZeroWeightEdge(..)
    | Error::NonIntegerRank(_)
    | Error::HypothesesFailed(_)
    | Error::NotAGraph
    | Error::TooLarge(..)
    | Error::Overflow(_) => true,
    Error::AtStage { source, .. } => is_math(source),
    _ => false,
  }
}

impl From<Error> for CliError {
  fn from(e: Error) -> Self {
    if is_math(&e) {
      CliError::Math(e.to_string())
    } else {
      CliError::Input(e.to_string())
    }
  }
}

fn read(path: &Path) -> Result<String, CliError> {
  std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Reads one input document and runs its schema checks.
fn parse_input<T>(path: &Path, parse: fn(&str) -> Result<T, InputError>) -> Result<T, CliError> {
  let text = read(path)?;
  parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<WeightedComplex, CliError> { parse_input(path, complex_from_json) }

/// A valid complex carrying a maximal tree: the stored one unless `--tree` asks otherwise.
fn load_with_tree(path: &Path, choice: Option<TreeChoice>) -> Result<WeightedComplex, CliError> {
  let k = load_complex(path)?;
  let k = match choice {
    Some(c) => k.without_tree().ensure_tree(c.into())?,
    None => k.ensure_tree(TreeStrategy::Bfs)?,
  };
  let report = validate(&k);
  if !report.ok {
    return Err(CliError::Input(format!("invalid complex: {report}")));
  }
  Ok(k)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
  match &cli.verb {
    Verb::Validate(a) => Ok(report::validate(&load_complex(&a.input)?)),
    Verb::Tree(a) => {
      let k = load_complex(&a.input)?;
      report::tree(&k, a.tree.into())
    },
    Verb::Present(a) => report::present(&load_with_tree(&a.input, a.tree)?),
    Verb::Classify(a) => report::classify(&load_with_tree(&a.input, a.tree)?),
    Verb::Abelianize(a) => report::abelianize(&load_with_tree(&a.input, a.tree)?),
    Verb::Homology(a) => {
      let k = load_complex(&a.input)?;
      let r = validate(&k);
      if !r.ok {
        return Err(CliError::Input(format!("invalid complex: {r}")));
      }
      report::homology(&k)
    },
    Verb::Lcs(a) => {
      if a.max_n == 0 {
        return Err(CliError::Input("--max-n must be at least 1".into()));
      }
      if a.series_order < a.max_n {
        return Err(CliError::Input(format!("--series-order {} is smaller than --max-n {}", a.series_order, a.max_n)));
      }
      report::lcs(&load_with_tree(&a.complex.input, a.complex.tree)?, a.max_n, a.series_order)
    },
    Verb::Vankampen(a) => report::vankampen(&parse_input(&a.input, cover_from_json)?),
    Verb::Filtration(a) => report::filtration(&parse_input(&a.input, filtration_from_json)?, a.fallback_abelian),
    Verb::Hamiltonian(a) => {
      let k = load_complex(&a.input)?.without_tree();
      let r = validate(&k);
      if !r.ok {
        return Err(CliError::Input(format!("invalid complex: {r}")));
      }
      report::hamiltonian(&k)
    },
  }
}

fn main() -> ExitCode {
  let cli = match Cli::try_parse() {
    Ok(cli) => cli,
    Err(e) => {
      let code = if e.use_stderr() { 1 } else { 0 };
      let _ = e.print();
      return ExitCode::from(code);
    },
  };
  match execute(&cli) {
    Ok(r) => {
      if cli.json {
        println!("{}", serde_json::to_string_pretty(&r.json).expect("report serializes"));
      } else {
        print!("{}", r.text);
      }
      if let Some(diag) = &r.diagnostic {
        eprintln!("wfg: {diag}");
      }
      ExitCode::from(r.code)
    },
    Err(e) => {
      eprintln!("wfg: {e}");
      ExitCode::from(e.code())
    },
  }
}
