//! Exact computer algebra for polar maps of plane curves.
//!
//! Decides whether a ternary form is homaloidal over the rationals or a finite
//! field by computing the projective degrees of its polar map, the torsion of
//! the naive graph, and, for line arrangements, a combinatorial formula for
//! the topological degree.

pub mod arrangements;
pub mod atlas;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod polar;
pub mod poly;
pub mod syzygy;

pub use error::{Error, Result};
