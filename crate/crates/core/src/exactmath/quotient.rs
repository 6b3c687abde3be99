use num_traits::{One, Zero};
use serde::Serialize;

use super::monomial::MAX_VARS;
use super::poly::Polynomial;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Linear relations cutting the ambient coordinate space down to 𝔱.
///
/// Relations are stored in reduced echelon form. Each relation has a pivot
/// variable (its eliminated variable) chosen as large as possible, and the
/// pivot is expressed in terms of the remaining free variables only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    ambient_dim: usize,
    relations: Vec<Vec<Rational>>,
    eliminated: Vec<usize>,
    /// For each variable: its normal form (itself when free).
    images: Vec<Polynomial>,
}

impl QuotientSpec {
    pub fn trivial(ambient_dim: usize) -> QuotientSpec {
        QuotientSpec::new(ambient_dim, Vec::new()).expect("empty relation set is valid")
    }

    /// Row-reduce `relations`, eliminating from the last column downward.
    pub fn new(ambient_dim: usize, relations: Vec<Vec<Rational>>) -> Result<QuotientSpec> {
        if ambient_dim == 0 || ambient_dim > MAX_VARS {
            return Err(Error::InvalidType(format!("ambient dimension {ambient_dim} unsupported")));
        }
        for r in &relations {
            if r.len() != ambient_dim {
                return Err(Error::WrongLength { expected: ambient_dim, got: r.len() });
            }
        }
        let mut rows = relations;
        let mut pivots: Vec<usize> = Vec::new();
        let mut next = 0;
        for col in (0..ambient_dim).rev() {
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = Rational::one() / &rows[next][col];
            for x in rows[next].iter_mut() {
                *x *= &inv;
            }
            for r in 0..rows.len() {
                if r != next && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[next].clone();
                    for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        if next < rows.len() {
            return Err(Error::Singular("dependent quotient relations".into()));
        }
        let mut images: Vec<Polynomial> = (0..ambient_dim).map(|k| Polynomial::var(ambient_dim, k)).collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            let mut c: Vec<Rational> = row.iter().map(|x| -x).collect();
            c[p] = Rational::zero();
            images[p] = Polynomial::linear(&c);
        }
        Ok(QuotientSpec { ambient_dim, relations: rows, eliminated: pivots, images })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn relations(&self) -> &[Vec<Rational>] {
        &self.relations
    }

    /// Eliminated variable indices (zero-based), strictly decreasing.
    pub fn eliminated(&self) -> &[usize] {
        &self.eliminated
    }

    pub fn is_trivial(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|k| !self.eliminated.contains(k)).collect()
    }

    /// Normal form of `p` modulo the relations.
    pub fn normalize(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.ambient_dim, "polynomial over a different ring");
        if self.is_trivial() || !p.terms().iter().any(|(m, _)| self.eliminated.iter().any(|&k| m.exponent(k) > 0)) {
            return p.clone();
        }
        p.substitute_linear(&self.images)
    }

    /// Normal form of the linear form with the given ambient coefficients.
    pub fn normalize_linear(&self, coeffs: &[Rational]) -> Polynomial {
        self.normalize(&Polynomial::linear(coeffs))
    }

    /// Value of relation r on a vector.
    pub fn relation_value(&self, r: usize, v: &[Rational]) -> Rational {
        self.relations[r].iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// True when every relation vanishes on the tangent vector `v`.
    pub fn is_tangent(&self, v: &[Rational]) -> bool {
        (0..self.relations.len()).all(|r| self.relation_value(r, v).is_zero())
    }

    /// Complete an assignment of the free variables to a point of 𝔱.
    pub fn complete_point(&self, point: &mut [Rational]) {
        for &k in &self.eliminated {
            let val = self.images[k].evaluate(point).expect("length matches");
            point[k] = val;
        }
    }
}

#[derive(Serialize)]
pub struct QuotientJson {
    pub ambient_dim: usize,
    pub relations: Vec<Vec<String>>,
    pub eliminated: Vec<usize>,
}

impl From<&QuotientSpec> for QuotientJson {
    fn from(q: &QuotientSpec) -> Self {
        QuotientJson {
            ambient_dim: q.ambient_dim,
            relations: q
                .relations
                .iter()
                .map(|r| r.iter().map(rational::to_canonical).collect())
                .collect(),
            eliminated: q.eliminated.iter().map(|k| k + 1).collect(),
        }
    }
}
