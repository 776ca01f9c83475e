//! Truncated formal power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 16;

/// `c0 + c1 x + ... + cN x^N`, everything above `x^N` discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
  coefficients: Vec<BigRational>,
}

fn binomial(n: u64, k: u64) -> BigInt {
  if k > n {
    return BigInt::zero();
  }
  let k = k.min(n - k);
  let mut acc = BigInt::one();
  for i in 0..k {
    acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
  }
  acc
}

impl RationalSeries {
  pub fn zero(order: usize) -> Self { Self { coefficients: vec![BigRational::zero(); order + 1] } }

  pub fn one(order: usize) -> Self { Self::constant(BigRational::one(), order) }

  pub fn constant(c: BigRational, order: usize) -> Self {
    let mut s = Self::zero(order);
    s.coefficients[0] = c;
    s
  }

  /// The monomial `x`.
  pub fn x(order: usize) -> Self {
    let mut s = Self::zero(order);
    if order >= 1 {
      s.coefficients[1] = BigRational::one();
    }
    s
  }

  /// Pads or truncates `coefficients` to `order + 1` terms.
  pub fn from_coefficients(mut coefficients: Vec<BigRational>, order: usize) -> Self {
    coefficients.resize(order + 1, BigRational::zero());
    Self { coefficients }
  }

  pub fn from_integers(values: &[i64], order: usize) -> Self {
    Self::from_coefficients(values.iter().map(|&v| BigRational::from_integer(v.into())).collect(), order)
  }

  pub fn order(&self) -> usize { self.coefficients.len() - 1 }

  pub fn coefficients(&self) -> &[BigRational] { &self.coefficients }

  pub fn coefficient(&self, n: usize) -> BigRational { self.coefficients.get(n).cloned().unwrap_or_else(BigRational::zero) }

  pub fn is_zero(&self) -> bool { self.coefficients.iter().all(Zero::is_zero) }

  pub fn add(&self, other: &Self) -> Result<Self> {
    self.check_order(other)?;
    Ok(Self { coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect() })
  }

  pub fn sub(&self, other: &Self) -> Result<Self> {
    self.check_order(other)?;
    Ok(Self { coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect() })
  }

  pub fn scale(&self, c: &BigRational) -> Self { Self { coefficients: self.coefficients.iter().map(|a| a * c).collect() } }

  /// Formal derivative, truncated to the same order (the top coefficient becomes 0).
  pub fn derivative(&self) -> Self {
    let n = self.order();
    let mut out = Self::zero(n);
    for k in 1..=n {
      out.coefficients[k - 1] = &self.coefficients[k] * BigRational::from_integer(BigInt::from(k));
    }
    out
  }

  fn check_order(&self, other: &Self) -> Result<()> {
    if self.order() != other.order() {
      return Err(Error::OrderMismatch(self.order(), other.order()));
    }
    Ok(())
  }
}

impl fmt::Display for RationalSeries {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let terms: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
    write!(f, "[{}]", terms.join(", "))
  }
}

/// `(1 + z)^m = (1 - x)^(-m)` with `z = x + x^2 + ...`; coefficient `n` is `C(n+m-1, m-1)`.
pub fn binomial_series(m: u64, order: usize) -> RationalSeries {
  if m == 0 {
    return RationalSeries::one(order);
  }
  let coefficients = (0..=order as u64).map(|n| BigRational::from_integer(binomial(n + m - 1, m - 1))).collect();
  RationalSeries { coefficients }
}

/// `(1 - x)^d`, a polynomial of degree `d`.
pub fn one_minus_x_pow(d: u64, order: usize) -> RationalSeries {
  let coefficients = (0..=order as u64)
    .map(|k| {
      let c = binomial(d, k);
      BigRational::from_integer(if k % 2 == 1 { -c } else { c })
    })
    .collect();
  RationalSeries { coefficients }
}

/// Cauchy product truncated to the common order.
pub fn series_mul(a: &RationalSeries, b: &RationalSeries) -> Result<RationalSeries> {
  a.check_order(b)?;
  let n = a.order();
  let mut out = RationalSeries::zero(n);
  for (i, ai) in a.coefficients.iter().enumerate() {
    if ai.is_zero() {
      continue;
    }
    for (j, bj) in b.coefficients.iter().take(n + 1 - i).enumerate() {
      out.coefficients[i + j] += ai * bj;
    }
  }
  Ok(out)
}

/// `log(1 - u) = -Σ_{k≥1} u^k / k` for `u` with zero constant term.
pub fn series_log1m(u: &RationalSeries) -> Result<RationalSeries> {
  if !u.coefficients[0].is_zero() {
    return Err(Error::NonzeroConstantTerm);
  }
  let n = u.order();
  let mut out = RationalSeries::zero(n);
  let mut power = u.clone();
  for k in 1..=n {
    if power.is_zero() {
      break;
    }
    let inv_k = BigRational::new(BigInt::from(-1), BigInt::from(k));
    out = out.add(&power.scale(&inv_k))?;
    power = series_mul(&power, u)?;
  }
  Ok(out)
}
