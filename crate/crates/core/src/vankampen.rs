//! Weighted van Kampen gluing.
//!
//! A cover `L = K1 ∪ K2` with `K1 ∩ K2 = K0` (all four carrying maximal trees, the three
//! pieces weighted subcomplexes of `L`) presents `π1(L)` as the amalgamated product of
//! `π1(K1)` and `π1(K2)` over `π1(K0)`. Edges of `K0` get two generators, `g'` on the `K1`
//! side and `g''` on the `K2` side, identified by `g' g''^-1`.
//!
//! Sub-complex vertices are matched to `L` by identifier; every index below is an `L` index.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{abelian_group_from_matrix, AbelianGroup};
use crate::complex::{map_edge, map_triangle, subcomplex_check, validate, vertex_map, EdgeKey, Triangle, ValidationReport, WeightedComplex};
use crate::error::{Error, Result};
use crate::invariants::{classify, normalize_factorization, satisfies_exactly_two, CyclicFactorization};
use crate::presentation::{abelianized_relation_matrix, generator_label, present, simplify, triangle_relator, Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
  pub l:  WeightedComplex,
  pub k1: WeightedComplex,
  pub k2: WeightedComplex,
  pub k0: WeightedComplex,
}

/// The six classes of `L`'s edges used in the gluing argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorClass {
  /// `ab ∈ A0`
  SharedTree,
  /// `ab ∈ K0 \ A0`
  SharedNonTree,
  /// `ab ∈ (K1 \ K0) ∩ A1`
  FirstTree,
  /// `ab ∈ K1 \ (K0 ∪ A1)`
  FirstNonTree,
  /// `ab ∈ (K2 \ K0) ∩ A2`
  SecondTree,
  /// `ab ∈ K2 \ (K0 ∪ A2)`
  SecondNonTree,
}

/// The subtree equalities `B = A1 ∪ A2` and `A1 ∩ A2 = A0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaChecks {
  pub union_is_outer_tree:        bool,
  pub intersection_is_inner_tree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
  pub report: ValidationReport,
  /// `None` when the pieces cannot be placed inside `L` at all.
  pub lemma:  Option<LemmaChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanKampenReport {
  pub hypotheses_ok:            bool,
  pub hypotheses:               ValidationReport,
  pub lemma_checks:             Option<LemmaChecks>,
  pub generator_classes:        Vec<(EdgeKey, GeneratorClass)>,
  pub amalgamated:              Option<Presentation>,
  pub direct:                   Option<Presentation>,
  pub amalgamated_abelian:      Option<AbelianGroup>,
  pub direct_abelian:           Option<AbelianGroup>,
  pub abelianizations_equal:    bool,
  /// `(classify(L), factorization predicted from the generator classes)` when `L` meets the
  /// exactly-two condition.
  pub factorizations:           Option<(CyclicFactorization, CyclicFactorization)>,
}

/// Simplices of a piece re-indexed into `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Embedded {
  vertices:  BTreeSet<usize>,
  edges:     BTreeMap<EdgeKey, i64>,
  triangles: BTreeSet<Triangle>,
  tree:      BTreeSet<EdgeKey>,
}

fn embed(k: &WeightedComplex, map: &[usize]) -> Embedded {
  let n = k.vertex_count();
  let ok_edge = |e: &EdgeKey| e.0 < n && e.1 < n;
  Embedded {
    vertices:  map.iter().copied().collect(),
    edges:     k.edges().filter(|(e, _)| ok_edge(e)).map(|(e, w)| (map_edge(map, e), w)).collect(),
    triangles: k.triangles().filter(|t| t.corners().iter().all(|&c| c < n)).map(|t| map_triangle(map, t)).collect(),
    tree:      k.tree().map(|t| t.iter().filter(|e| ok_edge(e)).map(|e| map_edge(map, *e)).collect()).unwrap_or_default(),
  }
}

struct Placed {
  l:  Embedded,
  k1: Embedded,
  k2: Embedded,
  k0: Embedded,
}

fn place(cover: &CoverSpec) -> Option<Placed> {
  let identity: Vec<usize> = (0..cover.l.vertex_count()).collect();
  Some(Placed {
    l:  embed(&cover.l, &identity),
    k1: embed(&cover.k1, &vertex_map(&cover.k1, &cover.l)?),
    k2: embed(&cover.k2, &vertex_map(&cover.k2, &cover.l)?),
    k0: embed(&cover.k0, &vertex_map(&cover.k0, &cover.l)?),
  })
}

fn lemma(p: &Placed) -> LemmaChecks {
  let union: BTreeSet<EdgeKey> = p.k1.tree.union(&p.k2.tree).copied().collect();
  let inter: BTreeSet<EdgeKey> = p.k1.tree.intersection(&p.k2.tree).copied().collect();
  LemmaChecks { union_is_outer_tree: union == p.l.tree, intersection_is_inner_tree: inter == p.k0.tree }
}

/// Checks the gluing hypotheses and evaluates the subtree lemma.
pub fn check_hypotheses(cover: &CoverSpec) -> HypothesisCheck {
  let mut report = ValidationReport { ok: true, violations: Vec::new() };
  let pieces = [("L", &cover.l), ("K1", &cover.k1), ("K2", &cover.k2), ("K0", &cover.k0)];
  for (name, k) in pieces {
    let r = validate(k);
    for (rule, msg) in r.violations {
      report.push(&rule, format!("{name}: {msg}"));
    }
    if k.tree().is_none() {
      report.push("tree", format!("{name} has no maximal tree"));
    }
  }

  let Some(placed) = place(cover) else {
    report.push("vertex-map", "a piece has a vertex that L does not");
    return HypothesisCheck { report, lemma: None };
  };

  for (inner_name, inner, outer_name, outer) in [
    ("K1", &cover.k1, "L", &cover.l),
    ("K2", &cover.k2, "L", &cover.l),
    ("K0", &cover.k0, "L", &cover.l),
    ("K0", &cover.k0, "K1", &cover.k1),
    ("K0", &cover.k0, "K2", &cover.k2),
  ] {
    let trees = inner.tree().zip(outer.tree());
    if trees.is_none() || !subcomplex_check(inner, outer, trees) {
      report.push("subcomplex", format!("{inner_name} is not a weighted subcomplex of {outer_name}"));
    }
  }

  let (k1, k2, k0, l) = (&placed.k1, &placed.k2, &placed.k0, &placed.l);
  let union_ok = k1.vertices.union(&k2.vertices).copied().collect::<BTreeSet<_>>() == l.vertices
    && k1.edges.keys().chain(k2.edges.keys()).copied().collect::<BTreeSet<_>>() == l.edges.keys().copied().collect()
    && k1.triangles.union(&k2.triangles).copied().collect::<BTreeSet<_>>() == l.triangles;
  if !union_ok {
    report.push("union", "K1 ∪ K2 differs from L");
  }
  let shared_edges: BTreeSet<EdgeKey> = k1.edges.keys().filter(|e| k2.edges.contains_key(e)).copied().collect();
  let inter_ok = k1.vertices.intersection(&k2.vertices).copied().collect::<BTreeSet<_>>() == k0.vertices
    && shared_edges == k0.edges.keys().copied().collect()
    && k1.triangles.intersection(&k2.triangles).copied().collect::<BTreeSet<_>>() == k0.triangles;
  if !inter_ok {
    report.push("intersection", "K1 ∩ K2 differs from K0");
  }

  HypothesisCheck { report, lemma: Some(lemma(&placed)) }
}

/// Classes of `L`'s edges, in `L`'s edge order.
pub fn generator_classes(cover: &CoverSpec) -> Option<Vec<(EdgeKey, GeneratorClass)>> {
  let p = place(cover)?;
  let classes = cover
    .l
    .edge_keys()
    .map(|e| {
      let class = if p.k0.edges.contains_key(&e) {
        if p.k0.tree.contains(&e) {
          GeneratorClass::SharedTree
        } else {
          GeneratorClass::SharedNonTree
        }
      } else if p.k1.edges.contains_key(&e) {
        if p.k1.tree.contains(&e) {
          GeneratorClass::FirstTree
        } else {
          GeneratorClass::FirstNonTree
        }
      } else if p.k2.tree.contains(&e) {
        GeneratorClass::SecondTree
      } else {
        GeneratorClass::SecondNonTree
      };
      (e, class)
    })
    .collect();
  Some(classes)
}

/// Appends the relators of one side, writing `K0` edges through `shared`.
fn side_relators(
  side: &Embedded,
  private: &BTreeMap<EdgeKey, usize>,
  shared: &BTreeMap<EdgeKey, usize>,
  relators: &mut Vec<Word>,
) {
  let index = |e: &EdgeKey| shared.get(e).or_else(|| private.get(e)).copied().expect("edge of L");
  for e in &side.tree {
    relators.push(Word::new([(index(e), side.edges[e])]));
  }
  for t in &side.triangles {
    let [ab, av, vb] = t.faces();
    let gen = |e: EdgeKey| (index(&e), side.edges[&e]);
    relators.push(triangle_relator(gen(ab), gen(av), gen(vb)));
  }
}

/// The presentation of `π1(K1) *_{π1(K0)} π1(K2)`.
pub fn amalgamated_presentation(cover: &CoverSpec) -> Result<Presentation> {
  let check = check_hypotheses(cover);
  if !check.report.ok {
    return Err(Error::HypothesesFailed(check.report));
  }
  let p = place(cover).expect("hypotheses place every piece");

  let mut generators = Vec::new();
  let mut private = BTreeMap::new();
  let mut primed = BTreeMap::new();
  let mut double_primed = BTreeMap::new();
  for e in cover.l.edge_keys() {
    let label = generator_label(e);
    if p.k0.edges.contains_key(&e) {
      primed.insert(e, generators.len());
      generators.push(format!("{label}'"));
      double_primed.insert(e, generators.len());
      generators.push(format!("{label}''"));
    } else {
      private.insert(e, generators.len());
      generators.push(label);
    }
  }

  let mut relators = Vec::new();
  side_relators(&p.k1, &private, &primed, &mut relators);
  side_relators(&p.k2, &private, &double_primed, &mut relators);
  for (e, &i) in &primed {
    relators.push(Word::new([(i, 1), (double_primed[e], -1)]));
  }
  relators.retain(|r| !r.is_empty());
  Ok(Presentation { generators, relators })
}

fn abelian_of(p: &Presentation) -> Result<AbelianGroup> {
  abelian_group_from_matrix(&abelianized_relation_matrix(p), p.generator_count())
}

/// The factorization read off the generator classes: tree classes give `Z/|w|`, non-tree
/// classes give `Z/|w|` when the edge bounds a triangle of its piece and `Z` otherwise.
fn predicted_factorization(cover: &CoverSpec, classes: &[(EdgeKey, GeneratorClass)]) -> Option<CyclicFactorization> {
  let p = place(cover)?;
  let bounds = |side: &Embedded, e: &EdgeKey| side.triangles.iter().any(|t| t.faces().contains(e));
  let raw: Vec<i64> = classes
    .iter()
    .map(|(e, class)| {
      let w = cover.l.weight(*e).unwrap_or(0);
      let face = match class {
        GeneratorClass::SharedTree | GeneratorClass::FirstTree | GeneratorClass::SecondTree => true,
        GeneratorClass::SharedNonTree => bounds(&p.k1, e) || bounds(&p.k2, e),
        GeneratorClass::FirstNonTree => bounds(&p.k1, e),
        GeneratorClass::SecondNonTree => bounds(&p.k2, e),
      };
      if face {
        w
      } else {
        0
      }
    })
    .collect();
  Some(normalize_factorization(&raw))
}

/// Hypotheses, both presentations, and their comparison at the abelianization level (and
/// the factorization level when `L` meets the exactly-two condition).
pub fn verify_van_kampen(cover: &CoverSpec) -> VanKampenReport {
  let check = check_hypotheses(cover);
  let classes = generator_classes(cover).unwrap_or_default();
  let mut report = VanKampenReport {
    hypotheses_ok:         check.report.ok,
    hypotheses:            check.report.clone(),
    lemma_checks:          check.lemma,
    generator_classes:     classes,
    amalgamated:           None,
    direct:                None,
    amalgamated_abelian:   None,
    direct_abelian:        None,
    abelianizations_equal: false,
    factorizations:        None,
  };
  if !check.report.ok {
    return report;
  }

  let (amalgamated, direct) = rayon::join(|| amalgamated_presentation(cover), || present(&cover.l));
  let (Ok(amalgamated), Ok(direct)) = (amalgamated, direct) else {
    return report;
  };
  let a = abelian_of(&simplify(&amalgamated)).ok();
  let d = abelian_of(&direct).ok();
  report.abelianizations_equal = a.is_some() && a == d;
  report.amalgamated_abelian = a;
  report.direct_abelian = d;
  report.amalgamated = Some(amalgamated);
  report.direct = Some(direct);

  if satisfies_exactly_two(&cover.l).unwrap_or(false) {
    if let (Ok(direct_f), Some(predicted)) = (classify(&cover.l), predicted_factorization(cover, &report.generator_classes)) {
      report.factorizations = Some((direct_f, predicted));
    }
  }
  report
}
