//! Matrix tables P_m for every type.
//!
//! A, B, C, D and G2 are generated from their row rules. F4 and the E series
//! are stored as text, one string per level: rows separated by `;`, entries
//! by whitespace. Rows and columns run over Λ_m in increasing label order.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, Mat};
use crate::exactmath::rational::{self, Rational};
use crate::rootsys::{Family, RootSystem};

use super::MatrixFamily;

const G2: &[&str] = &["1 0; 0 1", "1 0; 1 1", "1", "1", "1", "1"];

const F4: &[&str] = &[
    "1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1",
    "1 1 1 1; 0 1 0 0; 0 1 1 0; 0 1 1 1",
    "1 0 0; 1 1 1; 0 0 1",
    "1 -1/2 -1; 1 1 -1; 1/2 1/2 1",
    "1 0 -2; 0 1 2; 0 0 1",
    "1 0 0; 0 1 0; -1/2 1/2 1",
    "1 1; 0 1",
    "1 0; 2 1",
    "1",
    "1",
    "1",
    "1",
];

const E8: &[&str] = &[
    "1 0 0 0 0 0 0 0; 0 1 0 0 0 0 0 0; 0 0 1 0 0 0 0 0; 0 0 0 1 0 0 0 0; \
     0 0 0 0 1 0 0 0; 0 0 0 0 0 1 0 0; 0 0 0 0 0 0 1 0; 0 0 0 0 0 0 0 1",
    "1 0 0 0 0 0 0 0; 0 1 0 0 0 0 0 0; 0 1 1 0 0 0 0 0; 0 1 1 1 0 0 0 0; \
     0 1 1 1 1 0 0 0; 1 1 1 1 1 1 0 1; 1 1 1 1 1 1 1 1; 1 0 0 0 0 0 0 1",
    "1 0 0 0 0 0 0; 0 1 0 0 0 0 0; 0 1 1 0 0 0 0; 0 1 1 1 0 0 0; \
     -1 1 1 1 1 -1 -1; -1 1 1 1 1 1 -1; 1 1 1 1 1 1 1",
    "1 -1/2 -1/2 -1/2 -1/4 -1/2 -1/4; 0 1 0 0 0 0 0; 0 1 1 0 0 0 0; \
     1 1 1 1 -1 -1/2 1/2; 2 2 2 2 1 -1 1; 1 1 1 1 1/2 1 1/2; 2 -4 -4 -4 -2 -1 1",
    "1 0 0 0 0 -1/2 0; 0 1 0 0 0 0 0; -2/3 1 1 -1/3 0 1/3 -1/6; \
     -2 3 3 1 0 1 -1/2; -2 3 3 1 1 3 -1/2; 0 0 0 0 0 1 0; 4 6 6 2 0 -2 1",
    "1 -3/8 -3/16 -1/8 -1/8 -1/4 -1/32; 2/3 1 -3/4 -1/12 -1/12 -1/6 1/12; \
     4/3 2 1 -1/6 -1/6 -1/3 1/6; 2 3 3/2 1 -3/2 -3 1/4; 2 3 3/2 1 1 -3 1/4; \
     1 3/2 3/4 1/2 1/2 1 1/8; 8 -18 -9 -1 -1 -2 1",
    "1 3/4 0 0 0 0 1/16; 0 1 0 0 0 0 0; 8/3 4 1 0 0 0 1/6; 16 18 3 1 0 -2 1; \
     -8 -6 0 0 1 2 -1/2; -4 -3 0 0 0 1 -1/4; 0 12 0 0 0 0 1",
    "1 0 0 0 0 0 1/16; 0 1 0 0 0 0 1/12; 8/3 2 1 0 0 0 1/3; 0 6 3 1 1 2 1/2; \
     0 0 0 0 1 0 0; -8 -3 -3/2 -1/2 1/2 1 -3/4; 0 0 0 0 0 0 1",
    "1 0 0 1/16 1/8 1/16; 0 1 0 0 0 1/12; 4/3 2 1 1/12 1/6 1/4; -16 0 0 1 -2 -1; \
     -8 0 0 1/2 1 -1/2; 0 0 0 0 0 1",
    "1 3/2 3/4 0 1/8 -1/8; -1/3 1 -1/4 0 -1/24 1/24; -2/3 2 1 0 -1/12 1/12; \
     -16/3 -8 -4 1 4/3 -4/3; -4 -6 -3 0 1 -1; 4 6 3 0 1/2 1",
    "1 0 0 0 0 1/4; -1/3 1 0 0 0 -1/12; 2/3 0 1 0 0 1/6; -16/3 0 -8 1 4/3 -8/3; \
     -4 0 -6 0 1 -2; 0 0 0 0 0 1",
    "1 -3 0 0 0 0; 0 1 0 0 0 0; 0 0 1 1/8 1/6 -1/6; 0 0 0 1 0 0; \
     -8 24 -6 3/4 1 -1; 0 0 -6 3/4 1 1",
    "1 -3 0 0 0; 0 1 0 0 0; 8/3 -8 1 1/4 1/6; 16/3 -16 0 1 2/3; 8 -24 0 0 1",
    "1 -3 -3/4 -3/16 0; 0 1 0 0 0; 4/3 -4 1 -1/4 0; 16/3 -16 4 1 4/3; 0 0 0 0 1",
    "1 -6 0 -1/4; 1/6 1 0 1/24; 2/3 -4 1 -1/6; 4 -24 0 1",
    "1 0 0 1/4; 0 1 0 1/24; 2/3 0 1 1/6; 0 0 0 1",
    "1 6 0 1/4; 0 1 0 0; 2/3 4 1 1/6; 0 24 0 1",
    "1 0 3/2 0; 0 1 0 0; 0 0 1 0; 4 24 6 1",
    "1 0 3/2; -1/6 1 -1/4; 0 0 1",
    "1 -6 3/2; 0 1 0; 0 0 1",
    "1 1/4; 0 1",
    "1 1/4; 0 1",
    "1 0; 4 1",
    "1 0; 4 1",
    "1",
    "1",
    "1",
    "1",
    "1",
    "1",
];

const E7: &[&str] = &[
    "1 0 0 0 0 0 0; 0 1 0 0 0 0 0; 0 0 1 0 0 0 0; 0 0 0 1 0 0 0; \
     0 0 0 0 1 0 0; 0 0 0 0 0 1 0; 0 0 0 0 0 0 1",
    "1 0 0 0 0 0 0; 0 1 0 0 0 0 0; 0 1 1 0 0 0 0; 0 1 1 1 0 0 0; \
     1 1 1 1 1 0 1; 1 1 1 1 1 1 1; 1 0 0 0 0 0 1",
    "1 0 0 0 0 0; 0 1 0 0 0 0; 0 1 1 0 0 0; -1 1 1 1 -1 -1; -1 1 1 1 1 -1; 1 1 1 1 1 1",
    "1 -1/2 -1/2 -1/4 -1/2 -1/4; 0 1 0 0 0 0; 1 1 1 -1 -1/2 1/2; 2 2 2 1 -1 1; \
     1 1 1 1/2 1 1/2; 2 -4 -4 -2 -1 1",
    "1 0 0 0 -1/2 0; -2/3 1 -1/3 0 1/3 -1/6; -2 3 1 0 1 -1/2; -2 3 1 1 3 -1/2; \
     0 0 0 0 1 0; 4 6 2 0 -2 1",
    "1 -3/8 -1/8 -1/8 -1/4 0; 0 1 0 0 0 0; 0 3 1 -1 -2 0; 0 3 1 1 -2 0; \
     0 3/2 1/2 1/2 1 0; 8 -9 -1 -1 -2 1",
    "1 0 0 0 0; 4/3 1 0 0 0; 16 6 1 0 -2; -8 0 0 1 2; -4 0 0 0 1",
    "1 0 0 0 0; 4/3 1 0 0 0; 8 6 1 0 0; 0 0 0 1 0; -8 -3 -1/2 1/2 1",
    "1 0 1/8 1/8; 2/3 1 1/12 1/12; -8 0 1 -1; -8 0 1 1",
    "1 3/2 0 1/8; 0 1 0 0; -8 -12 1 0; 0 0 0 1",
    "1 0 0; -12 1 1; -12 0 1",
    "1 0 0; 0 1 0; -12 1 1",
    "1 1/12; 0 1",
    "1 0; 12 1",
    "1",
    "1",
    "1",
    "1",
];

const E6: &[&str] = &[
    "1 0 0 0 0 0; 0 1 0 0 0 0; 0 0 1 0 0 0; 0 0 0 1 0 0; 0 0 0 0 1 0; 0 0 0 0 0 1",
    "1 0 0 0 0 0; 0 1 0 0 0 0; 0 1 1 0 0 0; 1 1 1 1 0 1; 1 1 1 1 1 1; 1 0 0 0 0 1",
    "1 0 0 0 0; 0 1 0 0 0; -1 1 1 -1 -1; -1 1 1 1 -1; 1 1 1 1 1",
    "1 -1/2 -1/4 -1/2 -1/4; 1 1 -1 -1/2 1/2; 2 2 1 -1 1; 1 1 1/2 1 1/2; 2 -4 -2 -1 1",
    "1 0 0 -1/2 0; 0 1 0 0 0; 0 2 1 2 0; 0 0 0 1 0; 4 2 0 -2 1",
    "1 -1/4 -1/8 -1/4; -2 1 0 0; -4 2 1 0; 0 1 1/2 1",
    "1 0 -1/2; 0 1 1; 0 0 1",
    "1 0 0; 0 1 0; -2 1 1",
    "1 0; 2 1",
    "1",
    "1",
    "1",
];

/// Parse one level: rows separated by `;`, entries by whitespace.
pub fn parse_matrix(s: &str) -> Result<Mat> {
    let rows = s
        .split(';')
        .map(|row| row.split_whitespace().map(rational::parse).collect::<Result<Vec<_>>>())
        .collect::<Result<Mat>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix {s:?} is not square")));
    }
    Ok(rows)
}

fn from_text(levels: &[&str]) -> Result<Vec<Mat>> {
    levels.iter().map(|s| parse_matrix(s)).collect()
}

fn half(sign: i64) -> Rational {
    rational::frac(sign, 2)
}

fn sign(m: usize) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All-ones lower triangular matrix of size k.
fn lower_ones(k: usize) -> Mat {
    let mut p = linalg::zeros(k, k);
    for (r, row) in p.iter_mut().enumerate() {
        for x in row.iter_mut().take(r + 1) {
            *x = Rational::one();
        }
    }
    p
}

fn diag(entries: Vec<Rational>) -> Mat {
    let mut p = linalg::zeros(entries.len(), entries.len());
    for (k, e) in entries.into_iter().enumerate() {
        p[k][k] = e;
    }
    p
}

/// P^{D_n}_m for the ψ̃ recursion, indexed by the labels of Λ_m.
fn type_d_level(n: usize, m: usize, lam: &[usize]) -> Mat {
    if m == 0 {
        return diag((1..=n).map(|i| rational::int(if i + 1 >= n { 2 } else { 1 })).collect());
    }
    if m >= n {
        return lower_ones(lam.len());
    }
    let a = n - m; // the special column n - m
    let s = sign(m + 1);
    let entry = |i: usize, j: usize| -> Rational {
        if i == n {
            if j < a {
                rational::int(sign(m))
            } else if j == a {
                half(sign(m))
            } else if j == n {
                half(1)
            } else {
                rational::int(0)
            }
        } else if i + 1 < a {
            rational::int((j <= i) as i64)
        } else if i + 1 == a {
            if j < a {
                rational::int(1)
            } else if j == a {
                half(-1)
            } else if j == n {
                half(s)
            } else {
                rational::int(0)
            }
        } else if j == a {
            half(1)
        } else if j == n {
            half(s)
        } else {
            rational::int((j <= i) as i64)
        }
    };
    lam.iter().map(|&i| lam.iter().map(|&j| entry(i, j)).collect()).collect()
}

/// The matrices P_m for the type of `rs`.
pub fn paper_matrices(rs: &RootSystem) -> Result<MatrixFamily> {
    let t = rs.lie_type();
    let n = t.rank;
    let ht = rs.height();
    let lam = |m: usize| rs.lambda_set(m).expect("m within height");
    let levels: Vec<Mat> = match t.family {
        Family::A | Family::B => (0..=ht)
            .map(|m| if m == 0 { linalg::identity(n) } else { lower_ones(lam(m).len()) })
            .collect(),
        Family::C => (0..=ht)
            .map(|m| {
                let k = lam(m).len();
                if m == 0 {
                    diag((1..=n).map(|i| rational::int(if i == n { 2 } else { 1 })).collect())
                } else if m % 2 == 1 {
                    let mut p = lower_ones(k);
                    for x in p[k - 1].iter_mut().take(k - 1) {
                        *x = rational::int(2);
                    }
                    p
                } else {
                    lower_ones(k)
                }
            })
            .collect(),
        Family::D => (0..=ht).map(|m| type_d_level(n, m, &lam(m))).collect(),
        Family::G => from_text(G2)?,
        Family::F => from_text(F4)?,
        Family::E => from_text(match n {
            6 => E6,
            7 => E7,
            _ => E8,
        })?,
    };
    MatrixFamily::new(rs, levels)
}
