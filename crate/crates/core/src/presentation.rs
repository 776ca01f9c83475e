//! Finite presentations of weighted fundamental groups.
//!
//! One generator `g_ab` per edge `a < b`. Relations are stored as relator words:
//! a tree edge contributes `g_ab^w(ab)` and a triangle `a < v < b` contributes
//! `g_ab^-w(ab) · g_av^w(av) · g_vb^w(vb)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::IntegerMatrix;
use crate::complex::{EdgeKey, WeightedComplex};
use crate::error::Result;

/// A freely reduced word: no zero exponents and no two adjacent syllables on the same
/// generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
  syllables: Vec<(usize, i64)>,
}

impl Word {
  pub fn new(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
    let mut w = Self { syllables: Vec::new() };
    for (g, e) in syllables {
      w.push(g, e);
    }
    w
  }

  /// Appends `g^e`, merging with the last syllable and cancelling when possible.
  pub fn push(&mut self, g: usize, e: i64) {
    if e == 0 {
      return;
    }
    if let Some(last) = self.syllables.last_mut() {
      if last.0 == g {
        last.1 += e;
        if last.1 == 0 {
          self.syllables.pop();
        }
        return;
      }
    }
    self.syllables.push((g, e));
  }

  pub fn syllables(&self) -> &[(usize, i64)] { &self.syllables }

  pub fn is_empty(&self) -> bool { self.syllables.is_empty() }

  pub fn len(&self) -> usize { self.syllables.len() }

  pub fn exponent_sum(&self, g: usize) -> i64 { self.syllables.iter().filter(|s| s.0 == g).map(|s| s.1).sum() }

  /// Rewrites the word after deleting `g`: occurrences vanish and indices above `g` shift down.
  fn eliminate(&self, g: usize) -> Word {
    Word::new(self.syllables.iter().filter(|s| s.0 != g).map(|&(h, e)| (if h > g { h - 1 } else { h }, e)))
  }

  /// True iff the input syllables were already freely reduced.
  pub fn is_reduced(&self) -> bool {
    self.syllables.iter().all(|s| s.1 != 0) && self.syllables.windows(2).all(|w| w[0].0 != w[1].0)
  }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
  pub generators: Vec<String>,
  pub relators:   Vec<Word>,
}

impl Presentation {
  pub fn generator_count(&self) -> usize { self.generators.len() }

  pub fn relator_count(&self) -> usize { self.relators.len() }

  /// Every syllable references an existing generator and every relator is reduced.
  pub fn is_well_formed(&self) -> bool {
    self.relators.iter().all(|r| r.is_reduced() && r.syllables().iter().all(|s| s.0 < self.generators.len()))
  }

  fn render_word(&self, w: &Word) -> String {
    if w.is_empty() {
      return "1".to_string();
    }
    let parts: Vec<String> = w
      .syllables()
      .iter()
      .map(|&(g, e)| {
        let name = self.generators.get(g).map(String::as_str).unwrap_or("?");
        if e == 1 {
          name.to_string()
        } else {
          format!("{name}^{e}")
        }
      })
      .collect();
    parts.join("")
  }

  pub fn to_json(&self) -> serde_json::Value { serde_json::to_value(self).expect("presentation serializes") }
}

impl fmt::Display for Presentation {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
    match (self.generators.is_empty(), rels.is_empty()) {
      (true, true) => write!(f, "⟨ | ⟩"),
      (_, true) => write!(f, "⟨ {} | ⟩", self.generators.join(", ")),
      (true, _) => write!(f, "⟨ | {} ⟩", rels.join(", ")),
      _ => write!(f, "⟨ {} | {} ⟩", self.generators.join(", "), rels.join(", ")),
    }
  }
}

/// Label for the generator of edge `(a, b)`: `g01` for single-digit indices, `g10_12` otherwise.
pub fn generator_label(key: EdgeKey) -> String {
  if key.0 < 10 && key.1 < 10 {
    format!("g{}{}", key.0, key.1)
  } else {
    format!("g{}_{}", key.0, key.1)
  }
}

/// The relator of triangle `a < v < b`, given each face's generator index and weight.
pub(crate) fn triangle_relator(ab: (usize, i64), av: (usize, i64), vb: (usize, i64)) -> Word {
  Word::new([(ab.0, -ab.1), (av.0, av.1), (vb.0, vb.1)])
}

/// The presentation of `π1(K, w, A)`.
pub fn present(complex: &WeightedComplex) -> Result<Presentation> {
  let tree = complex.require_tree()?;
  let keys: Vec<EdgeKey> = complex.edge_keys().collect();
  let index = |k: EdgeKey| keys.binary_search(&k).expect("face of a valid complex");
  let generators = keys.iter().map(|&k| generator_label(k)).collect();

  let mut relators = Vec::new();
  for (k, w) in complex.edges() {
    if tree.contains(&k) {
      relators.push(Word::new([(index(k), w)]));
    }
  }
  for t in complex.triangles() {
    let [ab, av, vb] = t.faces();
    let with_weight = |k: EdgeKey| (index(k), complex.weight(k).unwrap_or(0));
    relators.push(triangle_relator(with_weight(ab), with_weight(av), with_weight(vb)));
  }
  relators.retain(|r| !r.is_empty());
  Ok(Presentation { generators, relators })
}

/// Safe Tietze moves only: drop empty relators and eliminate any generator that appears
/// alone with exponent `±1` in some relator, repeating until nothing changes.
pub fn simplify(p: &Presentation) -> Presentation {
  let mut generators = p.generators.clone();
  let mut relators: Vec<Word> = p.relators.iter().map(|r| Word::new(r.syllables().iter().copied())).collect();
  loop {
    relators.retain(|r| !r.is_empty());
    let killable = relators.iter().find(|r| r.len() == 1 && r.syllables()[0].1.abs() == 1).map(|r| r.syllables()[0].0);
    let Some(g) = killable else {
      break;
    };
    generators.remove(g);
    relators = relators.iter().map(|r| r.eliminate(g)).collect();
  }
  Presentation { generators, relators }
}

/// One row per relator, one column per generator; entries are exponent sums.
pub fn abelianized_relation_matrix(p: &Presentation) -> IntegerMatrix {
  let mut m = IntegerMatrix::zeros(p.relators.len(), p.generators.len());
  for (i, r) in p.relators.iter().enumerate() {
    for &(g, e) in r.syllables() {
      m[(i, g)] += BigInt::from(e);
    }
  }
  m
}
