//! Serde adapter writing big integers as decimal strings, e.g. `["2", "840"]`.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
  s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
where
  T: FromStr,
  T::Err: Display,
  D: Deserializer<'de>,
{
  let raw = Vec::<String>::deserialize(d)?;
  raw.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
}
