//! Exact rational arithmetic, sparse polynomials modulo linear relations,
//! polynomial matrices and fraction-free determinants.

pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod sample;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::{proportionality, Polynomial};
pub use quotient::QuotientSpec;
pub use rational::Rational;

use crate::error::Result;

/// Normal form of a raw term list modulo `q`.
pub fn normalize(terms: Vec<(Monomial, Rational)>, q: &QuotientSpec) -> Polynomial {
    q.normalize(&Polynomial::from_terms(q.ambient_dim(), terms))
}

/// Exact quotient `p / l`, `None` when `l` does not divide `p`.
pub fn divide_by_linear(p: &Polynomial, l: &Polynomial) -> Result<Option<Polynomial>> {
    p.divide_by_linear(l)
}

pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.determinant()
}

pub fn evaluate(p: &Polynomial, point: &[Rational]) -> Result<Rational> {
    p.evaluate(point)
}
