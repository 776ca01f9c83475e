//! Weighted simplicial complexes of dimension at most two.
//!
//! A [`WeightedComplex`] is the triple `(K, w, A)`: an ordered vertex list, integer
//! weights on the edges, a set of filled triangles and (optionally) a maximal tree.
//! Vertex positions define the total order used everywhere else in the crate, so an
//! edge is always stored as `(a, b)` with `a < b` and a triangle as `(a, v, b)` with
//! `a < v < b`.
//!
//! Construction never fails; [`validate`] reports every violated invariant instead.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge `ab` stored with its endpoints in ascending vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey(pub usize, pub usize);

impl EdgeKey {
  /// Normalizes the endpoint order. A loop `(a, a)` is kept as is and flagged by [`validate`].
  pub fn new(a: usize, b: usize) -> Self {
    if a <= b {
      Self(a, b)
    } else {
      Self(b, a)
    }
  }

  pub fn contains(&self, v: usize) -> bool { self.0 == v || self.1 == v }
}

/// A filled triangle `avb` with `a < v < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle(pub usize, pub usize, pub usize);

impl Triangle {
  pub fn new(x: usize, y: usize, z: usize) -> Self {
    let mut c = [x, y, z];
    c.sort_unstable();
    Self(c[0], c[1], c[2])
  }

  /// The three faces in the order `ab`, `av`, `vb`.
  pub fn faces(&self) -> [EdgeKey; 3] {
    let Triangle(a, v, b) = *self;
    [EdgeKey(a, b), EdgeKey(a, v), EdgeKey(v, b)]
  }

  pub fn corners(&self) -> [usize; 3] { [self.0, self.1, self.2] }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeStrategy {
  /// Use the tree stored on the complex.
  Given,
  /// Breadth-first from vertex 0, neighbors visited in ascending order.
  Bfs,
  /// Kruskal by ascending `|w|`, ties broken by `(a, b)`.
  KruskalMin,
  /// Kruskal by descending `|w|`, ties broken by `(a, b)`.
  KruskalMax,
}

impl std::str::FromStr for TreeStrategy {
  type Err = String;

  fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
    match s {
      "given" => Ok(Self::Given),
      "bfs" => Ok(Self::Bfs),
      "kruskal-min" => Ok(Self::KruskalMin),
      "kruskal-max" => Ok(Self::KruskalMax),
      other => Err(format!("unknown tree strategy `{other}`")),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
  pub edges:    BTreeSet<EdgeKey>,
  pub strategy: TreeStrategy,
}

impl SpanningTree {
  /// True iff the edges are edges of `complex` and form a cycle-free subgraph touching
  /// every vertex with exactly `|V| - 1` edges.
  pub fn is_maximal_tree_of(&self, complex: &WeightedComplex) -> bool {
    tree_violations(complex, &self.edges).is_empty()
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
  pub ok:         bool,
  pub violations: Vec<(String, String)>,
}

impl ValidationReport {
  pub fn from_violations(violations: Vec<(String, String)>) -> Self {
    Self { ok: violations.is_empty(), violations }
  }

  pub fn has_rule(&self, rule: &str) -> bool { self.violations.iter().any(|(r, _)| r == rule) }

  pub(crate) fn push(&mut self, rule: &str, message: impl Into<String>) {
    self.violations.push((rule.to_string(), message.into()));
    self.ok = false;
  }
}

impl fmt::Display for ValidationReport {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.ok {
      return write!(f, "ok");
    }
    let parts: Vec<String> = self.violations.iter().map(|(r, m)| format!("[{r}] {m}")).collect();
    write!(f, "{}", parts.join("; "))
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex {
  vertices:  Vec<String>,
  edges:     BTreeMap<EdgeKey, i64>,
  triangles: BTreeSet<Triangle>,
  tree:      Option<BTreeSet<EdgeKey>>,
}

impl WeightedComplex {
  pub fn new(vertices: Vec<String>) -> Self {
    Self { vertices, edges: BTreeMap::new(), triangles: BTreeSet::new(), tree: None }
  }

  /// Vertices named `v0, v1, ...`.
  pub fn with_vertex_count(n: usize) -> Self { Self::new((0..n).map(|i| format!("v{i}")).collect()) }

  /// Adds (or overwrites) the edge `ab` with weight `w`.
  pub fn with_edge(mut self, a: usize, b: usize, w: i64) -> Self {
    self.insert_edge(a, b, w);
    self
  }

  pub fn with_triangle(mut self, x: usize, y: usize, z: usize) -> Self {
    self.triangles.insert(Triangle::new(x, y, z));
    self
  }

  pub fn with_tree(mut self, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
    self.tree = Some(edges.into_iter().map(|(a, b)| EdgeKey::new(a, b)).collect());
    self
  }

  pub fn with_tree_keys(mut self, tree: BTreeSet<EdgeKey>) -> Self {
    self.tree = Some(tree);
    self
  }

  pub fn without_tree(mut self) -> Self {
    self.tree = None;
    self
  }

  pub fn insert_edge(&mut self, a: usize, b: usize, w: i64) { self.edges.insert(EdgeKey::new(a, b), w); }

  pub fn set_weight(&mut self, key: EdgeKey, w: i64) -> bool {
    match self.edges.get_mut(&key) {
      Some(slot) => {
        *slot = w;
        true
      },
      None => false,
    }
  }

  pub fn vertices(&self) -> &[String] { &self.vertices }

  pub fn vertex_count(&self) -> usize { self.vertices.len() }

  pub fn vertex_index(&self, name: &str) -> Option<usize> { self.vertices.iter().position(|v| v == name) }

  pub fn vertex_name(&self, i: usize) -> &str { self.vertices.get(i).map(String::as_str).unwrap_or("?") }

  pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, i64)> + '_ { self.edges.iter().map(|(k, w)| (*k, *w)) }

  pub fn edge_keys(&self) -> impl Iterator<Item = EdgeKey> + '_ { self.edges.keys().copied() }

  pub fn edge_count(&self) -> usize { self.edges.len() }

  pub fn has_edge(&self, key: EdgeKey) -> bool { self.edges.contains_key(&key) }

  pub fn weight(&self, key: EdgeKey) -> Option<i64> { self.edges.get(&key).copied() }

  /// Position of `key` in the ascending edge order, which is also its generator index.
  pub fn edge_position(&self, key: EdgeKey) -> Option<usize> { self.edges.keys().position(|k| *k == key) }

  pub fn triangles(&self) -> impl Iterator<Item = Triangle> + '_ { self.triangles.iter().copied() }

  pub fn triangle_count(&self) -> usize { self.triangles.len() }

  pub fn has_triangle(&self, t: Triangle) -> bool { self.triangles.contains(&t) }

  pub fn is_graph(&self) -> bool { self.triangles.is_empty() }

  pub fn tree(&self) -> Option<&BTreeSet<EdgeKey>> { self.tree.as_ref() }

  pub fn require_tree(&self) -> Result<&BTreeSet<EdgeKey>> { self.tree.as_ref().ok_or(Error::MissingTree) }

  pub fn is_tree_edge(&self, key: EdgeKey) -> bool { self.tree.as_ref().is_some_and(|t| t.contains(&key)) }

  /// True iff `key` is a face of some triangle.
  pub fn is_face_of_triangle(&self, key: EdgeKey) -> bool {
    self.triangles.iter().any(|t| t.faces().contains(&key))
  }

  pub fn edge_label(&self, key: EdgeKey) -> String {
    format!("({},{})", self.vertex_name(key.0), self.vertex_name(key.1))
  }

  /// Returns the complex with a maximal tree attached. A stored tree is kept; otherwise one
  /// is built with `strategy` (`Given` falls back to breadth-first).
  pub fn ensure_tree(&self, strategy: TreeStrategy) -> Result<WeightedComplex> {
    if self.tree.is_some() {
      return Ok(self.clone());
    }
    let strategy = if strategy == TreeStrategy::Given { TreeStrategy::Bfs } else { strategy };
    let tree = compute_maximal_tree(self, strategy)?;
    Ok(self.clone().with_tree_keys(tree.edges))
  }
}

mod dsu {
  pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank:   Vec<u8>,
  }

  impl UnionFind {
    pub(crate) fn new(n: usize) -> Self { Self { parent: (0..n).collect(), rank: vec![0; n] } }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
      while self.parent[x] != x {
        self.parent[x] = self.parent[self.parent[x]];
        x = self.parent[x];
      }
      x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
      let (ra, rb) = (self.find(a), self.find(b));
      if ra == rb {
        return false;
      }
      match self.rank[ra].cmp(&self.rank[rb]) {
        std::cmp::Ordering::Less => self.parent[ra] = rb,
        std::cmp::Ordering::Greater => self.parent[rb] = ra,
        std::cmp::Ordering::Equal => {
          self.parent[rb] = ra;
          self.rank[ra] += 1;
        },
      }
      true
    }
  }
}

pub(crate) use dsu::UnionFind;

fn in_range(n: usize, key: EdgeKey) -> bool { key.0 < n && key.1 < n }

fn is_connected(complex: &WeightedComplex) -> bool {
  let n = complex.vertex_count();
  if n == 0 {
    return false;
  }
  let mut uf = UnionFind::new(n);
  let mut components = n;
  for key in complex.edge_keys().filter(|k| in_range(n, *k)) {
    if uf.union(key.0, key.1) {
      components -= 1;
    }
  }
  components == 1
}

fn tree_violations(complex: &WeightedComplex, tree: &BTreeSet<EdgeKey>) -> Vec<(String, String)> {
  let n = complex.vertex_count();
  let mut out = Vec::new();
  for key in tree {
    if !complex.has_edge(*key) {
      out.push(("tree-edge".into(), format!("tree edge ({},{}) is not an edge of the complex", key.0, key.1)));
    }
  }
  let mut uf = UnionFind::new(n);
  for key in tree.iter().filter(|k| in_range(n, **k)) {
    if !uf.union(key.0, key.1) {
      out.push(("tree-cycle".into(), format!("tree edge ({},{}) closes a cycle", key.0, key.1)));
    }
  }
  if n > 0 && tree.len() + 1 != n {
    out.push(("tree-span".into(), format!("tree has {} edges but the complex has {} vertices", tree.len(), n)));
  } else if n > 0 {
    let root = uf.find(0);
    if (1..n).any(|v| uf.find(v) != root) {
      out.push(("tree-span".into(), "tree does not reach every vertex".into()));
    }
  }
  out
}

/// Checks every structural invariant of a weighted complex. Never fails.
pub fn validate(complex: &WeightedComplex) -> ValidationReport {
  let n = complex.vertex_count();
  let mut report = ValidationReport { ok: true, violations: Vec::new() };

  if n == 0 {
    report.push("nonempty", "complex has no vertices");
  }
  let mut seen = BTreeSet::new();
  for name in &complex.vertices {
    if !seen.insert(name.as_str()) {
      report.push("vertex-unique", format!("vertex `{name}` is listed twice"));
    }
  }
  for key in complex.edge_keys() {
    if !in_range(n, key) {
      report.push("vertex-range", format!("edge ({},{}) references a missing vertex", key.0, key.1));
    } else if key.0 == key.1 {
      report.push("edge-order", format!("edge ({},{}) is a loop", key.0, key.1));
    }
  }
  for t in complex.triangles() {
    if t.corners().iter().any(|&c| c >= n) {
      report.push("vertex-range", format!("triangle ({},{},{}) references a missing vertex", t.0, t.1, t.2));
      continue;
    }
    if t.0 == t.1 || t.1 == t.2 {
      report.push("triangle-order", format!("triangle ({},{},{}) repeats a vertex", t.0, t.1, t.2));
      continue;
    }
    for face in t.faces() {
      if !complex.has_edge(face) {
        report.push(
          "face-closure",
          format!("triangle ({},{},{}) is missing its face ({},{})", t.0, t.1, t.2, face.0, face.1),
        );
      }
    }
  }
  if n > 0 && !is_connected(complex) {
    report.push("connected", "the 1-skeleton is not path-connected");
  }
  if let Some(tree) = &complex.tree {
    for (rule, msg) in tree_violations(complex, tree) {
      report.push(&rule, msg);
    }
  }
  report
}

/// Builds a maximal tree of the 1-skeleton. The stored tree (if any) is ignored unless
/// `strategy` is [`TreeStrategy::Given`].
pub fn compute_maximal_tree(complex: &WeightedComplex, strategy: TreeStrategy) -> Result<SpanningTree> {
  let n = complex.vertex_count();
  if !is_connected(complex) {
    return Err(Error::NotConnected);
  }
  let edges = match strategy {
    TreeStrategy::Given => complex.require_tree()?.clone(),
    TreeStrategy::Bfs => {
      let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
      for key in complex.edge_keys().filter(|k| in_range(n, *k) && k.0 != k.1) {
        adjacency[key.0].insert(key.1);
        adjacency[key.1].insert(key.0);
      }
      let mut visited = vec![false; n];
      let mut queue = VecDeque::from([0]);
      visited[0] = true;
      let mut tree = BTreeSet::new();
      while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
          if !visited[v] {
            visited[v] = true;
            tree.insert(EdgeKey::new(u, v));
            queue.push_back(v);
          }
        }
      }
      tree
    },
    TreeStrategy::KruskalMin | TreeStrategy::KruskalMax => {
      let mut order: Vec<(EdgeKey, i64)> = complex.edges().collect();
      if strategy == TreeStrategy::KruskalMin {
        order.sort_by_key(|&(k, w)| (w.unsigned_abs(), k));
      } else {
        order.sort_by_key(|&(k, w)| (std::cmp::Reverse(w.unsigned_abs()), k));
      }
      let mut uf = UnionFind::new(n);
      order
        .into_iter()
        .filter(|(k, _)| in_range(n, *k) && uf.union(k.0, k.1))
        .map(|(k, _)| k)
        .collect()
    },
  };
  Ok(SpanningTree { edges, strategy })
}

/// Moves vertex `i` to position `permutation[i]`, re-sorting every simplex.
pub fn relabel(complex: &WeightedComplex, permutation: &[usize]) -> Result<WeightedComplex> {
  let n = complex.vertex_count();
  let mut hit = vec![false; n];
  if permutation.len() != n {
    return Err(Error::BadPermutation(n));
  }
  for &p in permutation {
    if p >= n || std::mem::replace(&mut hit[p], true) {
      return Err(Error::BadPermutation(n));
    }
  }
  let map = |i: usize| permutation.get(i).copied().unwrap_or(i);
  let mut vertices = vec![String::new(); n];
  for (i, name) in complex.vertices.iter().enumerate() {
    vertices[permutation[i]] = name.clone();
  }
  let edges = complex.edges().map(|(k, w)| (EdgeKey::new(map(k.0), map(k.1)), w)).collect();
  let triangles = complex.triangles().map(|t| Triangle::new(map(t.0), map(t.1), map(t.2))).collect();
  let tree = complex.tree.as_ref().map(|t| t.iter().map(|k| EdgeKey::new(map(k.0), map(k.1))).collect());
  Ok(WeightedComplex { vertices, edges, triangles, tree })
}

/// Maps each vertex of `inner` to its position in `outer` by identifier. `None` if some
/// vertex of `inner` is absent from `outer`.
pub fn vertex_map(inner: &WeightedComplex, outer: &WeightedComplex) -> Option<Vec<usize>> {
  inner.vertices.iter().map(|name| outer.vertex_index(name)).collect()
}

/// Re-expresses an edge of `inner` in `outer`'s vertex positions.
pub(crate) fn map_edge(map: &[usize], key: EdgeKey) -> EdgeKey { EdgeKey::new(map[key.0], map[key.1]) }

pub(crate) fn map_triangle(map: &[usize], t: Triangle) -> Triangle { Triangle::new(map[t.0], map[t.1], map[t.2]) }

/// `(K, w_K, A)` is a weighted subcomplex of `(L, w_L, B)`: simplices included, weights
/// restricted, `A ⊆ B`, and vertex order preserved. Vertices are matched by identifier.
pub fn is_weighted_subcomplex(inner: &WeightedComplex, outer: &WeightedComplex) -> Result<bool> {
  let inner_tree = inner.require_tree()?;
  let outer_tree = outer.require_tree()?;
  Ok(subcomplex_check(inner, outer, Some((inner_tree, outer_tree))))
}

/// Inclusion check shared by weighted subcomplexes and filtration stages; the tree
/// condition is only applied when both trees are supplied.
pub(crate) fn subcomplex_check(
  inner: &WeightedComplex,
  outer: &WeightedComplex,
  trees: Option<(&BTreeSet<EdgeKey>, &BTreeSet<EdgeKey>)>,
) -> bool {
  let Some(map) = vertex_map(inner, outer) else {
    return false;
  };
  if map.windows(2).any(|w| w[0] >= w[1]) {
    return false;
  }
  let n = inner.vertex_count();
  let edges_ok = inner.edges().all(|(k, w)| in_range(n, k) && outer.weight(map_edge(&map, k)) == Some(w));
  let triangles_ok =
    inner.triangles().all(|t| t.corners().iter().all(|&c| c < n) && outer.has_triangle(map_triangle(&map, t)));
  let trees_ok = trees.is_none_or(|(a, b)| a.iter().all(|k| in_range(n, *k) && b.contains(&map_edge(&map, *k))));
  edges_ok && triangles_ok && trees_ok
}
