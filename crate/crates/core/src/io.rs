//! JSON documents for complexes, van Kampen covers and filtrations.
//!
//! ```json
//! {"vertices": ["v0", "v1", "v2"],
//!  "edges": [{"a": 0, "b": 1, "w": 2}, {"a": 0, "b": 2, "w": 1}, {"a": 1, "b": 2, "w": 4}],
//!  "triangles": [],
//!  "tree": [[0, 1], [1, 2]]}
//! ```
//!
//! Indices refer to positions in `vertices`, and positions define the vertex order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::Filtration;
use crate::complex::{EdgeKey, WeightedComplex};
use crate::vankampen::CoverSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
  #[error("parse error at line {line}, column {column}: {message}")]
  Parse { line: usize, column: usize, message: String },

  #[error("schema error: {0}")]
  Schema(String),
}

impl InputError {
  fn from_serde(e: serde_json::Error) -> Self {
    match e.classify() {
      serde_json::error::Category::Data => InputError::Schema(e.to_string()),
      _ => InputError::Parse { line: e.line(), column: e.column(), message: e.to_string() },
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
  pub a: usize,
  pub b: usize,
  pub w: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
  pub vertices:  Vec<String>,
  #[serde(default)]
  pub edges:     Vec<EdgeDoc>,
  #[serde(default)]
  pub triangles: Vec<[usize; 3]>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub tree:      Option<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
  #[serde(rename = "L")]
  pub l:  ComplexDoc,
  #[serde(rename = "K1")]
  pub k1: ComplexDoc,
  #[serde(rename = "K2")]
  pub k2: ComplexDoc,
  #[serde(rename = "K0")]
  pub k0: ComplexDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDoc {
  pub stages:  Vec<ComplexDoc>,
  #[serde(default)]
  pub regions: BTreeMap<String, String>,
}

impl ComplexDoc {
  pub fn from_complex(k: &WeightedComplex) -> Self {
    Self {
      vertices:  k.vertices().to_vec(),
      edges:     k.edges().map(|(EdgeKey(a, b), w)| EdgeDoc { a, b, w }).collect(),
      triangles: k.triangles().map(|t| t.corners()).collect(),
      tree:      k.tree().map(|t| t.iter().map(|k| [k.0, k.1]).collect()),
    }
  }

  /// Schema checks (index ranges, ascending order, no duplicates) and conversion.
  pub fn into_complex(self, context: &str) -> Result<WeightedComplex, InputError> {
    let n = self.vertices.len();
    let schema = |msg: String| InputError::Schema(format!("{context}{msg}"));
    let mut k = WeightedComplex::new(self.vertices);
    let mut seen = BTreeSet::new();
    for (i, e) in self.edges.iter().enumerate() {
      if e.a >= e.b {
        return Err(schema(format!("edge #{i} ({},{}) must have a < b", e.a, e.b)));
      }
      if e.b >= n {
        return Err(schema(format!("edge #{i} ({},{}) references vertex {} but only {n} vertices exist", e.a, e.b, e.b)));
      }
      if !seen.insert((e.a, e.b)) {
        return Err(schema(format!("edge #{i} ({},{}) is listed twice", e.a, e.b)));
      }
      k.insert_edge(e.a, e.b, e.w);
    }
    let mut tris = BTreeSet::new();
    for (i, t) in self.triangles.iter().enumerate() {
      if !(t[0] < t[1] && t[1] < t[2]) {
        return Err(schema(format!("triangle #{i} {t:?} must satisfy a < v < b")));
      }
      if t[2] >= n {
        return Err(schema(format!("triangle #{i} {t:?} references a missing vertex")));
      }
      if !tris.insert(*t) {
        return Err(schema(format!("triangle #{i} {t:?} is listed twice")));
      }
      k = k.with_triangle(t[0], t[1], t[2]);
    }
    if let Some(tree) = self.tree {
      let mut keys = BTreeSet::new();
      for (i, e) in tree.iter().enumerate() {
        if e[0] >= e[1] {
          return Err(schema(format!("tree entry #{i} {e:?} must have a < b")));
        }
        if e[1] >= n {
          return Err(schema(format!("tree entry #{i} {e:?} references a missing vertex")));
        }
        keys.insert(EdgeKey(e[0], e[1]));
      }
      k = k.with_tree_keys(keys);
    }
    Ok(k)
  }
}

pub fn complex_from_json(text: &str) -> Result<WeightedComplex, InputError> {
  let doc: ComplexDoc = serde_json::from_str(text).map_err(InputError::from_serde)?;
  doc.into_complex("")
}

pub fn complex_to_json(k: &WeightedComplex) -> String {
  serde_json::to_string_pretty(&ComplexDoc::from_complex(k)).expect("complex serializes")
}

pub fn cover_from_json(text: &str) -> Result<CoverSpec, InputError> {
  let doc: CoverDoc = serde_json::from_str(text).map_err(InputError::from_serde)?;
  Ok(CoverSpec {
    l:  doc.l.into_complex("L: ")?,
    k1: doc.k1.into_complex("K1: ")?,
    k2: doc.k2.into_complex("K2: ")?,
    k0: doc.k0.into_complex("K0: ")?,
  })
}

pub fn cover_to_json(cover: &CoverSpec) -> String {
  let doc = CoverDoc {
    l:  ComplexDoc::from_complex(&cover.l),
    k1: ComplexDoc::from_complex(&cover.k1),
    k2: ComplexDoc::from_complex(&cover.k2),
    k0: ComplexDoc::from_complex(&cover.k0),
  };
  serde_json::to_string_pretty(&doc).expect("cover serializes")
}

pub fn filtration_from_json(text: &str) -> Result<Filtration, InputError> {
  let doc: FiltrationDoc = serde_json::from_str(text).map_err(InputError::from_serde)?;
  let mut stages = Vec::with_capacity(doc.stages.len());
  for (i, s) in doc.stages.into_iter().enumerate() {
    stages.push(s.into_complex(&format!("stage {i}: "))?);
  }
  let mut regions = BTreeMap::new();
  for (key, label) in doc.regions {
    let w: i64 = key.trim().parse().map_err(|_| InputError::Schema(format!("region key `{key}` is not an integer weight")))?;
    regions.insert(w, label);
  }
  Ok(Filtration { stages, regions })
}

pub fn filtration_to_json(f: &Filtration) -> String {
  let doc = FiltrationDoc {
    stages:  f.stages.iter().map(ComplexDoc::from_complex).collect(),
    regions: f.regions.iter().map(|(w, l)| (w.to_string(), l.clone())).collect(),
  };
  serde_json::to_string_pretty(&doc).expect("filtration serializes")
}

#[cfg(test)]
mod tests {
  use super::*;

  const FIGURE1: &str = r#"{"vertices": ["v0","v1","v2"],
    "edges": [{"a":0,"b":1,"w":2},{"a":0,"b":2,"w":1},{"a":1,"b":2,"w":4}],
    "tree": [[0,1],[1,2]]}"#;

  #[test]
  fn parses_figure1() {
    let k = complex_from_json(FIGURE1).unwrap();
    assert_eq!(k.vertex_count(), 3);
    assert_eq!(k.weight(EdgeKey(1, 2)), Some(4));
    assert_eq!(complex_from_json(&complex_to_json(&k)).unwrap(), k);
  }

  #[test]
  fn rejects_descending_edge() {
    let text = r#"{"vertices":["a","b"],"edges":[{"a":1,"b":0,"w":1}]}"#;
    match complex_from_json(text) {
      Err(InputError::Schema(msg)) => assert!(msg.contains("edge #0 (1,0)"), "{msg}"),
      other => panic!("unexpected {other:?}"),
    }
  }

  #[test]
  fn syntax_errors_carry_position() {
    match complex_from_json("{\n  \"vertices\": [\"a\",\n}") {
      Err(InputError::Parse { line, .. }) => assert_eq!(line, 3),
      other => panic!("unexpected {other:?}"),
    }
  }

  #[test]
  fn cover_requires_k0() {
    let text = format!(r#"{{"L": {FIGURE1}, "K1": {FIGURE1}, "K2": {FIGURE1}}}"#);
    match cover_from_json(&text) {
      Err(InputError::Schema(msg)) => assert!(msg.contains("K0"), "{msg}"),
      other => panic!("unexpected {other:?}"),
    }
  }

  #[test]
  fn filtration_region_keys_are_weights() {
    let text = format!(r#"{{"stages": [{FIGURE1}], "regions": {{"2": "left", "3": "right"}}}}"#);
    let f = filtration_from_json(&text).unwrap();
    assert_eq!(f.regions.get(&2).map(String::as_str), Some("left"));
    let bad = format!(r#"{{"stages": [{FIGURE1}], "regions": {{"two": "left"}}}}"#);
    assert!(matches!(filtration_from_json(&bad), Err(InputError::Schema(_))));
  }
}
