//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_poly;
pub use polynomial::Poly;

pub use ring::PolyRing;
