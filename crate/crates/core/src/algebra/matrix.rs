use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
  rows:    usize,
  cols:    usize,
  #[serde(with = "super::decimal")]
  entries: Vec<BigInt>,
}

impl IntegerMatrix {
  pub fn zeros(rows: usize, cols: usize) -> Self { Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] } }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = BigInt::one();
    }
    m
  }

  /// Builds a matrix from rows of machine integers. All rows must share a length; with no
  /// rows the column count is taken from `cols`.
  pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Self {
    let mut m = Self::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
      assert_eq!(row.len(), cols, "row {i} has {} entries, expected {cols}", row.len());
      for (j, &x) in row.iter().enumerate() {
        m[(i, j)] = x.into();
      }
    }
    m
  }

  pub fn diagonal<T: Into<BigInt> + Copy>(diag: &[T]) -> Self {
    let mut m = Self::zeros(diag.len(), diag.len());
    for (i, &d) in diag.iter().enumerate() {
      m[(i, i)] = d.into();
    }
    m
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn row(&self, i: usize) -> &[BigInt] { &self.entries[i * self.cols..(i + 1) * self.cols] }

  pub fn to_rows(&self) -> Vec<Vec<BigInt>> { (0..self.rows).map(|i| self.row(i).to_vec()).collect() }

  pub fn transpose(&self) -> Self {
    let mut t = Self::zeros(self.cols, self.rows);
    for i in 0..self.rows {
      for j in 0..self.cols {
        t[(j, i)] = self[(i, j)].clone();
      }
    }
    t
  }

  pub fn is_diagonal(&self) -> bool {
    (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
  }

  pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
    assert_eq!(self.cols, other.rows, "incompatible shapes for product");
    let mut out = Self::zeros(self.rows, other.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(i, k)];
        if a.is_zero() {
          continue;
        }
        for j in 0..other.cols {
          let prod = a * &other[(k, j)];
          out[(i, j)] += prod;
        }
      }
    }
    out
  }

  /// Determinant by fraction-free (Bareiss) elimination. Panics on non-square input.
  pub fn determinant(&self) -> BigInt {
    assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
    let n = self.rows;
    if n == 0 {
      return BigInt::one();
    }
    let mut a = self.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
      if a[k][k].is_zero() {
        match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
          Some(i) => {
            a.swap(i, k);
            sign = -sign;
          },
          None => return BigInt::zero(),
        }
      }
      for i in k + 1..n {
        for j in k + 1..n {
          let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
          a[i][j] = num / &prev;
        }
      }
      prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
  }

  /// Rank over the rationals, via fraction-free elimination on a copy.
  pub fn rank(&self) -> usize {
    let mut a = self.to_rows();
    let mut rank = 0;
    for col in 0..self.cols {
      let Some(p) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
        continue;
      };
      a.swap(rank, p);
      for i in rank + 1..self.rows {
        if a[i][col].is_zero() {
          continue;
        }
        let g = a[rank][col].gcd(&a[i][col]);
        let f_top = &a[i][col] / &g;
        let f_row = &a[rank][col] / &g;
        for j in col..self.cols {
          a[i][j] = &a[i][j] * &f_row - &a[rank][j] * &f_top;
        }
      }
      rank += 1;
    }
    rank
  }

  pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for j in 0..self.cols {
      self.entries.swap(a * self.cols + j, b * self.cols + j);
    }
  }

  pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for i in 0..self.rows {
      self.entries.swap(i * self.cols + a, i * self.cols + b);
    }
  }

  /// row[target] += factor * row[source]
  pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
      return;
    }
    for j in 0..self.cols {
      let delta = factor * &self[(source, j)];
      self[(target, j)] += delta;
    }
  }

  /// col[target] += factor * col[source]
  pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
      return;
    }
    for i in 0..self.rows {
      let delta = factor * &self[(i, source)];
      self[(i, target)] += delta;
    }
  }

  pub(crate) fn negate_row(&mut self, i: usize) {
    for j in 0..self.cols {
      let x = std::mem::take(&mut self[(i, j)]);
      self[(i, j)] = -x;
    }
  }

  pub fn max_abs_entry(&self) -> BigInt { self.entries.iter().map(|x| x.abs()).max().unwrap_or_default() }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
  type Output = BigInt;

  fn index(&self, (i, j): (usize, usize)) -> &BigInt {
    assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
    &self.entries[i * self.cols + j]
  }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
  fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
    assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
    &mut self.entries[i * self.cols + j]
  }
}

impl fmt::Display for IntegerMatrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[")?;
    for i in 0..self.rows {
      let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
      write!(f, "{}[{}]", if i > 0 { "," } else { "" }, row.join(","))?;
    }
    write!(f, "]")
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn determinant_small() {
    assert_eq!(IntegerMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
    assert_eq!(IntegerMatrix::from_rows(3, &[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).determinant(), BigInt::from(-2));
    assert_eq!(IntegerMatrix::from_rows(2, &[vec![1, 2], vec![2, 4]]).determinant(), BigInt::zero());
  }

  #[test]
  fn rank_and_product() {
    let a = IntegerMatrix::from_rows(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
    assert_eq!(a.rank(), 2);
    assert_eq!(IntegerMatrix::zeros(0, 3).rank(), 0);
    let i = IntegerMatrix::identity(3);
    assert_eq!(a.mul(&i), a);
    assert_eq!(a.transpose().transpose(), a);
  }
}
