//! Application workflows: birth/death tracking along a filtration, Hamiltonian paths as
//! maximal trees, and the five- and six-ring demo.
//!
//! Births and deaths are multiset differences of the cyclic factorizations of consecutive
//! stages. A finite factor `Z/m` is attributed to a region through the user's weight map,
//! since torsion orders are edge weights; free factors are always attributed to `unknown`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AbelianGroup;
use crate::complex::{subcomplex_check, validate, EdgeKey, SpanningTree, TreeStrategy, WeightedComplex};
use crate::error::{Error, Result};
use crate::invariants::{abelianization, classify, satisfies_exactly_two, CyclicFactorization};

pub const UNKNOWN_REGION: &str = "unknown";

/// Hamiltonian enumeration is exponential; larger graphs are refused.
pub const MAX_HAMILTONIAN_VERTICES: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
  pub stages:  Vec<WeightedComplex>,
  /// Edge weight to region label.
  pub regions: BTreeMap<i64, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
  Birth,
  Death,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirthDeathEvent {
  pub stage:  usize,
  pub kind:   EventKind,
  /// `0` for `Z`, otherwise a torsion order `m >= 2`.
  pub factor: u64,
  pub region: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
  /// Per stage, the factor orders being diffed (sorted, `0` for `Z`).
  pub factorizations:   Vec<Vec<u64>>,
  pub events:           Vec<BirthDeathEvent>,
  /// Set when some stage failed the exactly-two condition and every stage was diffed by
  /// its abelianization instead.
  pub abelian_fallback: bool,
}

impl FiltrationReport {
  pub fn events_at(&self, stage: usize) -> impl Iterator<Item = &BirthDeathEvent> + '_ {
    self.events.iter().filter(move |e| e.stage == stage)
  }
}

fn at_stage(stage: usize, e: Error) -> Error { Error::AtStage { stage, source: Box::new(e) } }

/// Stages with trees attached (breadth-first when absent), validated and checked for nesting.
fn prepared_stages(f: &Filtration) -> Result<Vec<WeightedComplex>> {
  let mut stages = Vec::with_capacity(f.stages.len());
  for (i, s) in f.stages.iter().enumerate() {
    let s = s.ensure_tree(TreeStrategy::Bfs).map_err(|e| at_stage(i, e))?;
    let report = validate(&s);
    if !report.ok {
      return Err(at_stage(i, Error::Invalid(report)));
    }
    stages.push(s);
  }
  for (i, pair) in stages.windows(2).enumerate() {
    if !subcomplex_check(&pair[0], &pair[1], None) {
      return Err(Error::NotNested(i, i + 1));
    }
  }
  Ok(stages)
}

fn abelian_orders(g: &AbelianGroup) -> Result<Vec<u64>> {
  g.as_orders().iter().map(|m| m.to_u64().ok_or_else(|| Error::Overflow(m.to_string()))).collect()
}

/// `a - b` for sorted multisets.
fn multiset_minus(a: &[u64], b: &[u64]) -> Vec<u64> {
  let mut out = Vec::new();
  let mut j = 0;
  for &x in a {
    while j < b.len() && b[j] < x {
      j += 1;
    }
    if j < b.len() && b[j] == x {
      j += 1;
    } else {
      out.push(x);
    }
  }
  out
}

/// Classifies every stage (in parallel) and diffs consecutive factorizations. With
/// `fallback_abelian`, a stage failing the exactly-two condition switches the whole
/// filtration to abelian invariants, whose factors carry no region.
pub fn analyze_filtration(f: &Filtration, fallback_abelian: bool) -> Result<FiltrationReport> {
  let stages = prepared_stages(f)?;
  let classified: Vec<Result<CyclicFactorization>> = stages.par_iter().map(classify).collect();

  let mut abelian_fallback = false;
  let factorizations: Vec<Vec<u64>> = if classified.iter().all(Result::is_ok) {
    classified.into_iter().map(|c| c.map(|c| c.orders().to_vec())).collect::<Result<_>>()?
  } else {
    let (i, err) = classified.into_iter().enumerate().find_map(|(i, c)| c.err().map(|e| (i, e))).expect("a failed stage");
    if !fallback_abelian || !matches!(err, Error::ConditionFailed(..)) {
      return Err(at_stage(i, err));
    }
    abelian_fallback = true;
    let groups: Vec<Result<Vec<u64>>> =
      stages.par_iter().enumerate().map(|(i, s)| abelianization(s).and_then(|g| abelian_orders(&g)).map_err(|e| at_stage(i, e))).collect();
    groups.into_iter().collect::<Result<_>>()?
  };

  let region = |m: u64| -> String {
    if m == 0 || abelian_fallback {
      return UNKNOWN_REGION.to_string();
    }
    i64::try_from(m).ok().and_then(|w| f.regions.get(&w)).cloned().unwrap_or_else(|| UNKNOWN_REGION.to_string())
  };
  let mut events = Vec::new();
  for (i, pair) in factorizations.windows(2).enumerate() {
    let stage = i + 1;
    for m in multiset_minus(&pair[0], &pair[1]) {
      events.push(BirthDeathEvent { stage, kind: EventKind::Death, factor: m, region: region(m) });
    }
    for m in multiset_minus(&pair[1], &pair[0]) {
      events.push(BirthDeathEvent { stage, kind: EventKind::Birth, factor: m, region: region(m) });
    }
  }
  Ok(FiltrationReport { factorizations, events, abelian_fallback })
}

/// Every Hamiltonian path of a graph, as its edge set. A path and its reverse give one tree;
/// trees come out in lexicographic order of their sorted edge lists.
pub fn enumerate_hamiltonian_trees(complex: &WeightedComplex) -> Result<Vec<SpanningTree>> {
  if !complex.is_graph() {
    return Err(Error::NotAGraph);
  }
  let n = complex.vertex_count();
  if n > MAX_HAMILTONIAN_VERTICES {
    return Err(Error::TooLarge(n, MAX_HAMILTONIAN_VERTICES));
  }
  if n == 0 {
    return Ok(Vec::new());
  }
  let mut adjacency = vec![Vec::new(); n];
  for EdgeKey(a, b) in complex.edge_keys() {
    if a != b && b < n {
      adjacency[a].push(b);
      adjacency[b].push(a);
    }
  }
  for list in &mut adjacency {
    list.sort_unstable();
  }

  let mut found = BTreeSet::new();
  let mut path = Vec::with_capacity(n);
  for start in 0..n {
    path.push(start);
    extend_path(&adjacency, 1u32 << start, &mut path, &mut found);
    path.pop();
  }
  Ok(
    found
      .into_iter()
      .map(|edges: Vec<EdgeKey>| SpanningTree { edges: edges.into_iter().collect(), strategy: TreeStrategy::Given })
      .collect(),
  )
}

fn extend_path(adjacency: &[Vec<usize>], visited: u32, path: &mut Vec<usize>, found: &mut BTreeSet<Vec<EdgeKey>>) {
  let n = adjacency.len();
  if path.len() == n {
    // keep one orientation of each path
    if n == 1 || path[0] < path[n - 1] {
      let mut edges: Vec<EdgeKey> = path.windows(2).map(|w| EdgeKey::new(w[0], w[1])).collect();
      edges.sort_unstable();
      found.insert(edges);
    }
    return;
  }
  let last = *path.last().expect("nonempty path");
  for &next in &adjacency[last] {
    if visited & (1 << next) == 0 {
      path.push(next);
      extend_path(adjacency, visited | (1 << next), path, found);
      path.pop();
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum TreeInvariant {
  Factorization(CyclicFactorization),
  Abelian(AbelianGroup),
}

impl std::fmt::Display for TreeInvariant {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    match self {
      TreeInvariant::Factorization(c) => write!(f, "{c}"),
      TreeInvariant::Abelian(g) => write!(f, "{g}"),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDiscriminationReport {
  pub trees:               Vec<BTreeSet<EdgeKey>>,
  pub invariants_per_tree: Vec<TreeInvariant>,
  pub distinguishable:     bool,
}

/// Computes the group of `complex` equipped with each tree: the cyclic factorization when
/// every tree meets the exactly-two condition, otherwise the abelianization for all of them.
pub fn discriminate_trees(complex: &WeightedComplex, trees: &[SpanningTree]) -> Result<TreeDiscriminationReport> {
  let equipped: Vec<WeightedComplex> = trees
    .iter()
    .enumerate()
    .map(|(i, t)| if t.is_maximal_tree_of(complex) { Ok(complex.clone().with_tree_keys(t.edges.clone())) } else { Err(Error::BadTree(i)) })
    .collect::<Result<_>>()?;

  let classifiable = equipped.iter().map(satisfies_exactly_two).collect::<Result<Vec<bool>>>()?.into_iter().all(|b| b);
  let invariants_per_tree: Vec<TreeInvariant> = equipped
    .par_iter()
    .map(|k| if classifiable { classify(k).map(TreeInvariant::Factorization) } else { abelianization(k).map(TreeInvariant::Abelian) })
    .collect::<Result<_>>()?;
  let distinguishable = invariants_per_tree.windows(2).any(|w| w[0] != w[1]);
  Ok(TreeDiscriminationReport { trees: trees.iter().map(|t| t.edges.clone()).collect(), invariants_per_tree, distinguishable })
}

fn ring(names: Vec<String>, weights: &[i64], non_tree: EdgeKey) -> WeightedComplex {
  let n = names.len();
  let mut k = WeightedComplex::new(names);
  for (i, &w) in weights.iter().enumerate() {
    k.insert_edge(i, (i + 1) % n, w);
  }
  let tree = k.edge_keys().filter(|e| *e != non_tree).collect();
  k.with_tree_keys(tree)
}

/// Five-ring `v0..v4`, all weights 1, with `v0v4` left out of the tree.
pub fn pentagon_ring() -> WeightedComplex { ring((0..5).map(|i| format!("v{i}")).collect(), &[1; 5], EdgeKey(0, 4)) }

/// Six-ring `v5..v10` with the alternating bonds `v5v6`, `v7v8`, `v9v10` of weight 2 and
/// `v5v10` left out of the tree.
pub fn hexagon_ring() -> WeightedComplex {
  ring((5..=10).map(|i| format!("v{i}")).collect(), &[2, 1, 2, 1, 2, 1], EdgeKey(0, 5))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDemo {
  pub pentagon:        CyclicFactorization,
  pub hexagon:         CyclicFactorization,
  pub distinguishable: bool,
}

pub fn ring_demo() -> Result<RingDemo> {
  let pentagon = classify(&pentagon_ring())?;
  let hexagon = classify(&hexagon_ring())?;
  let distinguishable = pentagon != hexagon;
  Ok(RingDemo { pentagon, hexagon, distinguishable })
}
