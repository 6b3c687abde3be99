use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<PolyMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::WrongLength { expected: rows * cols, got: entries.len() });
        }
        if let Some(first) = entries.first() {
            let n = first.nvars();
            if entries.iter().any(|p| p.nvars() != n) {
                return Err(Error::Parse("matrix entries over different rings".into()));
            }
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, nvars: usize) -> PolyMatrix {
        let mut entries = vec![Polynomial::zero(nvars); n * n];
        for i in 0..n {
            entries[i * n + i] = Polynomial::one(nvars);
        }
        PolyMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division in the elimination is exact, so intermediate entries
    /// stay polynomials. A zero pivot is handled by a row swap.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::WrongLength { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let nvars = self.entries.first().map_or(0, |p| p.nvars());
        if n == 0 {
            return Ok(Polynomial::one(nvars));
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut prev = Polynomial::one(nvars);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // Prefer the smallest nonzero pivot to keep divisions cheap.
                let swap = (k + 1..n)
                    .filter(|&r| !a[r][k].is_zero())
                    .min_by_key(|&r| a[r][k].len());
                match swap {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(nvars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero(nvars);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}
