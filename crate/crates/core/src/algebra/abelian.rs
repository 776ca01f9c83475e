use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | ... | dk`, `di ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
  pub free_rank: usize,
  #[serde(with = "super::decimal")]
  pub torsion:   Vec<BigUint>,
}

impl AbelianGroup {
  pub fn trivial() -> Self { Self { free_rank: 0, torsion: Vec::new() } }

  pub fn free(rank: usize) -> Self { Self { free_rank: rank, torsion: Vec::new() } }

  /// The direct sum `⊕ Z/m` over `orders`, where `0` stands for `Z`, brought into
  /// invariant-factor form by pairwise `(gcd, lcm)` exchange.
  pub fn from_cyclic_orders<I>(orders: I) -> Self
  where
    I: IntoIterator,
    I::Item: Into<BigUint>,
  {
    let mut free_rank = 0;
    let mut finite: Vec<BigUint> = Vec::new();
    for m in orders {
      let m: BigUint = m.into();
      if m.is_zero() {
        free_rank += 1;
      } else if !m.is_one() {
        finite.push(m);
      }
    }
    for i in 0..finite.len() {
      for j in i + 1..finite.len() {
        let g = finite[i].gcd(&finite[j]);
        let l = finite[i].lcm(&finite[j]);
        finite[i] = g;
        finite[j] = l;
      }
    }
    finite.retain(|d| !d.is_one());
    Self { free_rank, torsion: finite }
  }

  pub fn is_trivial(&self) -> bool { self.free_rank == 0 && self.torsion.is_empty() }

  /// Free rank as that many zeros followed by the invariant factors.
  pub fn as_orders(&self) -> Vec<BigUint> {
    std::iter::repeat_n(BigUint::zero(), self.free_rank).chain(self.torsion.iter().cloned()).collect()
  }
}

impl fmt::Display for AbelianGroup {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts = Vec::new();
    match self.free_rank {
      0 => {},
      1 => parts.push("Z".to_string()),
      r => parts.push(format!("Z^{r}")),
    }
    parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
      write!(f, "0")
    } else {
      write!(f, "{}", parts.join(" ⊕ "))
    }
  }
}

/// `Z^n` modulo the row space of `a`: free rank `n - rank(a)`, torsion the SNF diagonal
/// entries `≥ 2`.
pub fn abelian_group_from_matrix(a: &IntegerMatrix, n_generators: usize) -> Result<AbelianGroup> {
  if a.cols() != n_generators {
    return Err(Error::ShapeMismatch { expected: n_generators, found: a.cols() });
  }
  let snf = smith_normal_form(a);
  let diagonal = snf.diagonal();
  let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
  let torsion = diagonal
    .into_iter()
    .filter(|d| *d > BigInt::one())
    .map(|d| d.to_biguint().expect("SNF diagonal is nonnegative"))
    .collect();
  Ok(AbelianGroup { free_rank: n_generators - rank, torsion })
}
