//! Computable invariants of weighted fundamental groups: free-product-of-cyclics
//! classification, abelianization, weighted graph homology and the free ranks of the
//! lower central series quotients.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
  abelian_group_from_matrix, binomial_series, divisors, mobius, one_minus_x_pow, series_log1m, series_mul,
  AbelianGroup, IntegerMatrix, RationalSeries,
};
use crate::complex::{EdgeKey, WeightedComplex};
use crate::error::{Error, Result};
use crate::presentation::{abelianized_relation_matrix, present};

/// A free product of cyclic groups as the sorted multiset of their orders; `0` is `Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicFactorization {
  orders: Vec<u64>,
}

impl CyclicFactorization {
  pub fn orders(&self) -> &[u64] { &self.orders }

  pub fn free_count(&self) -> usize { self.orders.iter().take_while(|&&m| m == 0).count() }

  pub fn is_trivial(&self) -> bool { self.orders.is_empty() }

  /// `Ab(G)` of the free product, which is the direct sum of the factors.
  pub fn abelianization(&self) -> AbelianGroup { AbelianGroup::from_cyclic_orders(self.orders.iter().copied()) }
}

impl fmt::Display for CyclicFactorization {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.orders.is_empty() {
      return write!(f, "1");
    }
    let parts: Vec<String> = self.orders.iter().map(|&m| if m == 0 { "Z".to_string() } else { format!("Z/{m}") }).collect();
    write!(f, "{}", parts.join(" * "))
  }
}

/// `Z/w` and `Z/-w` coincide and `Z/1` is trivial: take absolute values, drop 1s, sort.
pub fn normalize_factorization(raw: &[i64]) -> CyclicFactorization {
  let mut orders: Vec<u64> = raw.iter().map(|w| w.unsigned_abs()).filter(|&m| m != 1).collect();
  orders.sort_unstable();
  CyclicFactorization { orders }
}

/// For every triangle `avb`, exactly two of `ab, av, vb` are tree edges. Vacuous on graphs.
pub fn satisfies_exactly_two(complex: &WeightedComplex) -> Result<bool> {
  Ok(first_exactly_two_failure(complex)?.is_none())
}

fn first_exactly_two_failure(complex: &WeightedComplex) -> Result<Option<crate::complex::Triangle>> {
  let tree = complex.require_tree()?;
  Ok(complex.triangles().find(|t| t.faces().iter().filter(|f| tree.contains(f)).count() != 2))
}

/// The cyclic factorization of `π1(K, w, A)` for complexes meeting the exactly-two
/// condition: tree edges and non-tree triangle faces give `Z/|w|`, other edges give `Z`.
pub fn classify(complex: &WeightedComplex) -> Result<CyclicFactorization> {
  if let Some(t) = first_exactly_two_failure(complex)? {
    return Err(Error::ConditionFailed(
      complex.vertex_name(t.0).to_string(),
      complex.vertex_name(t.1).to_string(),
      complex.vertex_name(t.2).to_string(),
    ));
  }
  let raw: Vec<i64> = complex
    .edges()
    .map(|(k, w)| if complex.is_tree_edge(k) || complex.is_face_of_triangle(k) { w } else { 0 })
    .collect();
  Ok(normalize_factorization(&raw))
}

/// A wedge of one edge per factor at a common base vertex, weighted by the factor order,
/// with the whole complex as its tree.
pub fn realize(target: &CyclicFactorization) -> WeightedComplex {
  let n = target.orders().len();
  let mut k = WeightedComplex::with_vertex_count(n + 1);
  for (i, &m) in target.orders().iter().enumerate() {
    k.insert_edge(0, i + 1, m as i64);
  }
  k.with_tree((1..=n).map(|i| (0, i)))
}

/// `Ab(π1(K, w, A))` from the exponent-sum matrix of the presentation.
pub fn abelianization(complex: &WeightedComplex) -> Result<AbelianGroup> {
  let p = present(complex)?;
  abelian_group_from_matrix(&abelianized_relation_matrix(&p), p.generator_count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHomology {
  pub h0: AbelianGroup,
  pub h1: AbelianGroup,
}

/// The weighted boundary `∂[a,b] = w(ab)([b] - [a])` as a `|V| × |E|` matrix.
pub fn weighted_boundary_matrix(complex: &WeightedComplex) -> IntegerMatrix {
  let mut m = IntegerMatrix::zeros(complex.vertex_count(), complex.edge_count());
  for (j, (EdgeKey(a, b), w)) in complex.edges().enumerate() {
    m[(b, j)] += BigInt::from(w);
    m[(a, j)] -= BigInt::from(w);
  }
  m
}

/// Weighted homology of a graph with unit vertex weights.
pub fn weighted_homology_graph(complex: &WeightedComplex) -> Result<WeightedHomology> {
  if !complex.is_graph() {
    return Err(Error::HasTriangles);
  }
  if let Some((k, _)) = complex.edges().find(|&(_, w)| w == 0) {
    return Err(Error::ZeroWeightEdge(complex.vertex_name(k.0).into(), complex.vertex_name(k.1).into()));
  }
  let boundary = weighted_boundary_matrix(complex);
  let rank = boundary.rank();
  let h1 = AbelianGroup::free(complex.edge_count() - rank);
  let h0 = abelian_group_from_matrix(&boundary.transpose(), complex.vertex_count())?;
  Ok(WeightedHomology { h0, h1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcsRanks {
  /// `ranks[n - 1]` is the free rank of `γn / γn+1`.
  #[serde(with = "crate::algebra::decimal")]
  pub ranks: Vec<BigUint>,
  pub order: usize,
}

impl LcsRanks {
  pub fn rank(&self, n: usize) -> Option<&BigUint> { n.checked_sub(1).and_then(|i| self.ranks.get(i)) }
}

impl fmt::Display for LcsRanks {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = self.ranks.iter().enumerate().map(|(i, r)| format!("R{}={}", i + 1, r)).collect();
    write!(f, "{}", parts.join(" "))
  }
}

/// The generating series `U(x) = 1 + (1+z)^ms {(s-1) - Σ_j (1+z)^-(mj - mj-1)}` with each
/// cyclic factor taken as its own free factor; `m_j` counts infinite-order factors among the
/// first `j`.
pub fn gaglione_series(g: &CyclicFactorization, order: usize) -> Result<RationalSeries> {
  let s = g.orders().len() as i64;
  let mut sum = RationalSeries::zero(order);
  let mut infinite_so_far = 0u64;
  for &m in g.orders() {
    let step = u64::from(m == 0);
    infinite_so_far += step;
    sum = sum.add(&one_minus_x_pow(step, order))?;
  }
  let bracket = RationalSeries::constant(BigRational::from_integer(BigInt::from(s - 1)), order).sub(&sum)?;
  let u = series_mul(&binomial_series(infinite_so_far, order), &bracket)?;
  RationalSeries::one(order).add(&u)
}

/// Free ranks `R1..R_maxN` of the lower central series quotients of a free product of
/// cyclic groups.
pub fn lcs_free_ranks(g: &CyclicFactorization, max_n: usize, order: usize) -> Result<LcsRanks> {
  if order < max_n {
    return Err(Error::TruncationTooSmall { order, max_n });
  }
  let u = gaglione_series(g, order)?;
  let log = series_log1m(&u)?;
  let alpha = |k: usize| -log.coefficient(k);

  let mut ranks = Vec::with_capacity(max_n);
  for n in 1..=max_n {
    if n == 1 {
      ranks.push(BigUint::from(g.free_count()));
      continue;
    }
    let mut acc = BigRational::zero();
    for k in divisors(n as u64).into_iter().filter(|&k| k > 1) {
      let mu = mobius((n as u64 / k) as i64)?;
      if mu == 0 {
        continue;
      }
      acc += alpha(k as usize) * BigRational::from_integer(BigInt::from(k)) * BigRational::from_integer(BigInt::from(mu));
    }
    acc /= BigRational::from_integer(BigInt::from(n));
    if !acc.is_integer() || acc.is_negative() {
      return Err(Error::NonIntegerRank(n));
    }
    ranks.push(acc.to_integer().to_biguint().ok_or(Error::NonIntegerRank(n))?);
  }
  Ok(LcsRanks { ranks, order })
}

/// Necklace count `(1/n) Σ_{d|n} μ(d) m^(n/d)`: the rank of `γn/γn+1` of a free group of
/// rank `m`.
pub fn witt_rank(m: u64, n: u64) -> BigUint {
  if n == 1 {
    return BigUint::from(m);
  }
  let mut acc = BigInt::zero();
  for d in divisors(n) {
    let mu = mobius(d as i64).expect("divisors are positive");
    if mu != 0 {
      let power = num_traits::pow(BigInt::from(m), (n / d).to_usize().expect("small exponent"));
      acc += power * BigInt::from(mu);
    }
  }
  (acc / BigInt::from(n)).to_biguint().unwrap_or_else(BigUint::zero)
}

impl From<Vec<u64>> for CyclicFactorization {
  fn from(mut orders: Vec<u64>) -> Self {
    orders.retain(|&m| m != 1);
    orders.sort_unstable();
    Self { orders }
  }
}
