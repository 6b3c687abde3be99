//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type Mat = Vec<Vec<Rational>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Rational::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let c = b.first().map_or(0, |x| x.len());
    let mut out = zeros(n, c);
    for i in 0..n {
        assert_eq!(a[i].len(), k, "dimension mismatch");
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// Reduced row echelon form; returns the pivot columns.
///
/// Pivots are searched left to right, so the pivot columns are as small as
/// possible.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Singular("non-square matrix".into()));
    }
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular("matrix is not invertible".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column.
pub fn kernel(m: &Mat) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, |x| x.len());
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the left kernel {y : y m = 0}.
pub fn left_kernel(m: &Mat) -> Vec<Vec<Rational>> {
    kernel(&transpose(m))
}

/// One solution x of `a x = b`, or `None` when inconsistent.
pub fn solve(a: &Mat, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |x| x.len());
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}
