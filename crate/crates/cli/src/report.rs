//! One function per verb, each producing the text and JSON forms of the same report.

use std::fmt::Write as _;

use serde_json::{json, Value};
use wfg_core::analysis::{analyze_filtration, discriminate_trees, enumerate_hamiltonian_trees, EventKind};
use wfg_core::complex::{self, compute_maximal_tree, EdgeKey};
use wfg_core::invariants::{self, abelianization, lcs_free_ranks, weighted_homology_graph};
use wfg_core::io::ComplexDoc;
use wfg_core::presentation;
use wfg_core::vankampen::verify_van_kampen;
use wfg_core::{CoverSpec, CyclicFactorization, Filtration, TreeStrategy, WeightedComplex};

use crate::CliError;

pub struct Report {
  pub text:       String,
  pub json:       Value,
  pub code:       u8,
  pub diagnostic: Option<String>,
}

impl Report {
  fn ok(text: String, json: Value) -> Self { Self { text, json, code: 0, diagnostic: None } }
}

fn edge_list(k: &WeightedComplex, edges: impl IntoIterator<Item = EdgeKey>) -> String {
  edges.into_iter().map(|e| k.edge_label(e)).collect::<Vec<_>>().join(" ")
}

pub fn validate(k: &WeightedComplex) -> Report {
  let r = complex::validate(k);
  let mut text = String::new();
  if r.ok {
    text.push_str("ok\n");
  } else {
    for (rule, msg) in &r.violations {
      let _ = writeln!(text, "[{rule}] {msg}");
    }
  }
  let code = if r.ok { 0 } else { 1 };
  let diagnostic = (!r.ok).then(|| format!("{} violation(s)", r.violations.len()));
  Report { text, json: serde_json::to_value(&r).expect("report serializes"), code, diagnostic }
}

pub fn tree(k: &WeightedComplex, strategy: TreeStrategy) -> Result<Report, CliError> {
  let r = complex::validate(&k.clone().without_tree());
  if !r.ok {
    return Err(CliError::Input(format!("invalid complex: {r}")));
  }
  let t = compute_maximal_tree(k, strategy)?;
  let with_tree = k.clone().with_tree_keys(t.edges.clone());
  let name = serde_json::to_value(strategy).expect("strategy serializes");
  let text = format!("tree ({}): {}\n", name.as_str().unwrap_or("?"), edge_list(k, t.edges.iter().copied()));
  Ok(Report::ok(text, serde_json::to_value(ComplexDoc::from_complex(&with_tree)).expect("complex serializes")))
}

pub fn present(k: &WeightedComplex) -> Result<Report, CliError> {
  let p = presentation::present(k)?;
  Ok(Report::ok(format!("{p}\n"), p.to_json()))
}

fn factorization_json(c: &CyclicFactorization) -> Value { json!({ "factors": c.orders(), "group": c.to_string() }) }

pub fn classify(k: &WeightedComplex) -> Result<Report, CliError> {
  let c = invariants::classify(k)?;
  Ok(Report::ok(format!("{c}\n"), factorization_json(&c)))
}

pub fn abelianize(k: &WeightedComplex) -> Result<Report, CliError> {
  let g = abelianization(k)?;
  let mut json = serde_json::to_value(&g).expect("group serializes");
  json["group"] = json!(g.to_string());
  Ok(Report::ok(format!("{g}\n"), json))
}

pub fn homology(k: &WeightedComplex) -> Result<Report, CliError> {
  let h = weighted_homology_graph(k)?;
  let json = json!({
    "h0": serde_json::to_value(&h.h0).expect("group serializes"),
    "h1": serde_json::to_value(&h.h1).expect("group serializes"),
  });
  Ok(Report::ok(format!("H0 = {}\nH1 = {}\n", h.h0, h.h1), json))
}

pub fn lcs(k: &WeightedComplex, max_n: usize, order: usize) -> Result<Report, CliError> {
  let c = invariants::classify(k)?;
  let r = lcs_free_ranks(&c, max_n, order)?;
  let mut json = serde_json::to_value(&r).expect("ranks serialize");
  json["group"] = json!(c.to_string());
  Ok(Report::ok(format!("{r}\n"), json))
}

pub fn vankampen(cover: &CoverSpec) -> Result<Report, CliError> {
  let r = verify_van_kampen(cover);
  let mut text = String::new();
  let _ = writeln!(text, "hypotheses: {}", r.hypotheses);
  if let Some(l) = r.lemma_checks {
    let _ = writeln!(text, "B = A1 ∪ A2: {}", l.union_is_outer_tree);
    let _ = writeln!(text, "A1 ∩ A2 = A0: {}", l.intersection_is_inner_tree);
  }
  if let (Some(a), Some(d)) = (&r.amalgamated, &r.direct) {
    let _ = writeln!(text, "amalgamated: {a}");
    let _ = writeln!(text, "direct: {d}");
  }
  if let (Some(a), Some(d)) = (&r.amalgamated_abelian, &r.direct_abelian) {
    let _ = writeln!(text, "Ab(amalgamated) = {a}");
    let _ = writeln!(text, "Ab(direct) = {d}");
  }
  let _ = writeln!(text, "abelianizations equal: {}", r.abelianizations_equal);
  if let Some((direct, predicted)) = &r.factorizations {
    let _ = writeln!(text, "factorization: {direct}");
    let _ = writeln!(text, "predicted from generator classes: {predicted}");
  }
  let json = serde_json::to_value(&r).expect("report serializes");
  if !r.hypotheses_ok {
    return Ok(Report { text, json, code: 2, diagnostic: Some(format!("van Kampen hypotheses fail: {}", r.hypotheses)) });
  }
  Ok(Report::ok(text, json))
}

fn orders_text(orders: &[u64]) -> String { CyclicFactorization::from(orders.to_vec()).to_string() }

fn factor_text(m: u64) -> String {
  if m == 0 {
    "Z".to_string()
  } else {
    format!("Z/{m}")
  }
}

pub fn filtration(f: &Filtration, fallback: bool) -> Result<Report, CliError> {
  let r = analyze_filtration(f, fallback)?;
  let mut text = String::from("# births and deaths are multiset differences of the cyclic factorizations of consecutive stages\n");
  if r.abelian_fallback {
    text.push_str("# warning: a stage fails the exactly-two condition; diffing abelianizations instead\n");
  }
  for (i, orders) in r.factorizations.iter().enumerate() {
    let _ = writeln!(text, "stage {i}: {}", orders_text(orders));
  }
  for e in &r.events {
    let kind = match e.kind {
      EventKind::Birth => "birth",
      EventKind::Death => "death",
    };
    let _ = writeln!(text, "stage {}: {kind} {} ({})", e.stage, factor_text(e.factor), e.region);
  }
  let diagnostic = r.abelian_fallback.then(|| "warning: fell back to abelianization diffing".to_string());
  Ok(Report { text, json: serde_json::to_value(&r).expect("report serializes"), code: 0, diagnostic })
}

pub fn hamiltonian(k: &WeightedComplex) -> Result<Report, CliError> {
  let trees = enumerate_hamiltonian_trees(k)?;
  let r = discriminate_trees(k, &trees)?;
  let mut text = String::new();
  for (i, (t, inv)) in r.trees.iter().zip(&r.invariants_per_tree).enumerate() {
    let _ = writeln!(text, "path #{i}: {} -> {inv}", edge_list(k, t.iter().copied()));
  }
  let _ = writeln!(text, "paths: {}", r.trees.len());
  let _ = writeln!(text, "distinguishable: {}", r.distinguishable);
  Ok(Report::ok(text, serde_json::to_value(&r).expect("report serializes")))
}
