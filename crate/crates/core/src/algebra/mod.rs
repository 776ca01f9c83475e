//! Exact integer and rational kernels.

pub mod abelian;
pub(crate) mod decimal;
pub mod matrix;
pub mod mobius;
pub mod series;
pub mod snf;

pub use abelian::{abelian_group_from_matrix, AbelianGroup};
pub use matrix::IntegerMatrix;
pub use mobius::{divisors, mobius};
pub use series::{binomial_series, one_minus_x_pow, series_log1m, series_mul, RationalSeries};
pub use snf::{smith_normal_form, SnfResult};
