use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
  pub u: IntegerMatrix,
  pub d: IntegerMatrix,
  pub v: IntegerMatrix,
}

impl SnfResult {
  /// Diagonal of `D` up to `min(rows, cols)`, zeros included.
  pub fn diagonal(&self) -> Vec<BigInt> { (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect() }

  pub fn rank(&self) -> usize { self.diagonal().iter().filter(|x| !x.is_zero()).count() }
}

struct Work {
  d: IntegerMatrix,
  u: IntegerMatrix,
  v: IntegerMatrix,
}

impl Work {
  fn swap_rows(&mut self, a: usize, b: usize) {
    self.d.swap_rows(a, b);
    self.u.swap_rows(a, b);
  }

  fn swap_cols(&mut self, a: usize, b: usize) {
    self.d.swap_cols(a, b);
    self.v.swap_cols(a, b);
  }

  fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
    self.d.add_row_multiple(target, source, factor);
    self.u.add_row_multiple(target, source, factor);
  }

  fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
    self.d.add_col_multiple(target, source, factor);
    self.v.add_col_multiple(target, source, factor);
  }
}

/// Smallest nonzero `|entry|` in the block `[t.., t..]`, ties broken by `(row, col)`.
fn find_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
  let mut best: Option<((usize, usize), BigInt)> = None;
  for i in t..d.rows() {
    for j in t..d.cols() {
      let x = d[(i, j)].abs();
      if x.is_zero() {
        continue;
      }
      if best.as_ref().is_none_or(|(_, b)| x < *b) {
        best = Some(((i, j), x));
      }
    }
  }
  best.map(|(pos, _)| pos)
}

/// Smith normal form by repeated gcd reduction with smallest-entry pivoting.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
  let (m, n) = (a.rows(), a.cols());
  let mut w = Work { d: a.clone(), u: IntegerMatrix::identity(m), v: IntegerMatrix::identity(n) };

  for t in 0..m.min(n) {
    let Some((pi, pj)) = find_pivot(&w.d, t) else {
      break;
    };
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    loop {
      let pivot = w.d[(t, t)].clone();
      for i in t + 1..m {
        if !w.d[(i, t)].is_zero() {
          let q = w.d[(i, t)].div_floor(&pivot);
          w.add_row(i, t, &-q);
        }
      }
      for j in t + 1..n {
        if !w.d[(t, j)].is_zero() {
          let q = w.d[(t, j)].div_floor(&pivot);
          w.add_col(j, t, &-q);
        }
      }

      // Remainders are strictly smaller than the pivot; promote the smallest one.
      let mut smaller: Option<(bool, usize, BigInt)> = None;
      for i in t + 1..m {
        let x = w.d[(i, t)].abs();
        if !x.is_zero() && smaller.as_ref().is_none_or(|s| x < s.2) {
          smaller = Some((true, i, x));
        }
      }
      for j in t + 1..n {
        let x = w.d[(t, j)].abs();
        if !x.is_zero() && smaller.as_ref().is_none_or(|s| x < s.2) {
          smaller = Some((false, j, x));
        }
      }
      if let Some((is_row, idx, _)) = smaller {
        if is_row {
          w.swap_rows(t, idx);
        } else {
          w.swap_cols(t, idx);
        }
        continue;
      }

      let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d[(i, j)].is_multiple_of(&pivot)));
      match bad_row {
        Some(i) => w.add_row(t, i, &BigInt::one()),
        None => break,
      }
    }

    if w.d[(t, t)].is_negative() {
      w.d.negate_row(t);
      w.u.negate_row(t);
    }
  }

  SnfResult { u: w.u, d: w.d, v: w.v }
}
