//! Weighted fundamental groups of weighted simplicial complexes.
//!
//! A weighted simplicial complex `(K, w, A)` carries integer weights on its edges and a
//! chosen maximal tree `A`. Its weighted fundamental group is presented by one generator
//! per edge, with `g_ab^w(ab) = 1` on tree edges and `g_ab^w(ab) = g_av^w(av) g_vb^w(vb)` on
//! triangles. This crate builds those presentations and computes what is decidable about
//! them: cyclic factorizations when the group is a free product of cyclics, abelianizations
//! through Smith normal form, weighted graph homology, lower central series free ranks and
//! van Kampen gluing checks.

pub mod algebra;
pub mod analysis;
pub mod complex;
pub mod error;
pub mod invariants;
pub mod io;
pub mod presentation;
pub mod vankampen;

pub use analysis::Filtration;
pub use algebra::{AbelianGroup, IntegerMatrix, RationalSeries};
pub use complex::{EdgeKey, SpanningTree, TreeStrategy, Triangle, ValidationReport, WeightedComplex};
pub use error::{Error, Result};
pub use invariants::CyclicFactorization;
pub use presentation::{Presentation, Word};
pub use vankampen::CoverSpec;
