use crate::error::{Error, Result};

/// Möbius function by trial division.
pub fn mobius(n: i64) -> Result<i8> {
  if n <= 0 {
    return Err(Error::NonPositive(n));
  }
  let mut n = n as u64;
  let mut sign = 1i8;
  let mut p = 2u64;
  while p * p <= n {
    if n.is_multiple_of(p) {
      n /= p;
      if n.is_multiple_of(p) {
        return Ok(0);
      }
      sign = -sign;
    }
    p += 1;
  }
  if n > 1 {
    sign = -sign;
  }
  Ok(sign)
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
  let mut small = Vec::new();
  let mut large = Vec::new();
  let mut d = 1;
  while d * d <= n {
    if n.is_multiple_of(d) {
      small.push(d);
      if d * d != n {
        large.push(n / d);
      }
    }
    d += 1;
  }
  small.extend(large.into_iter().rev());
  small
}
