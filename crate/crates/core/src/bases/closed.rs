//! Closed-form bases for types A, B, C, D and G2, and the type D auxiliary
//! derivations ψ_{0,j}, ξ_i and ψ̃_{i,j}.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::Polynomial;
use crate::rootsys::{Family, RootIndex, RootSystem};

use super::UniformBasis;

fn x(n: usize, k: usize) -> Polynomial {
    Polynomial::var(n, k - 1)
}

fn alpha(rs: &RootSystem, i: usize, j: usize) -> Polynomial {
    rs.root(RootIndex::new(i, j)).expect("root in range").clone()
}

/// ∏_{ℓ=from}^{to} α_{k,ℓ}; empty products are 1.
fn alpha_product(rs: &RootSystem, k: usize, from: usize, to: usize) -> Polynomial {
    let n = rs.ambient_dim();
    (from..=to).fold(Polynomial::one(n), |acc, l| acc.mul(&alpha(rs, k, l)))
}

/// ∏ x_ℓ over ℓ in `range`, skipping `skip`.
fn x_product(n: usize, range: std::ops::RangeInclusive<usize>, skip: Option<usize>) -> Polynomial {
    range.filter(|&l| Some(l) != skip).fold(Polynomial::one(n), |acc, l| acc.mul(&x(n, l)))
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn deriv(rs: &RootSystem, coeffs: Vec<Polynomial>) -> Derivation {
    Derivation::new(coeffs, rs.quotient()).expect("closed forms are tangent")
}

/// Σ_k c_k ∂_k, projected to 𝔱 by subtracting the mean (type A).
fn project_mean(rs: &RootSystem, c: Vec<Polynomial>) -> Derivation {
    let n = c.len();
    let mean = c.iter().fold(Polynomial::zero(n), |a, f| a.add(f)).scale(&rational::frac(1, n as i64));
    deriv(rs, c.iter().map(|f| f.sub(&mean)).collect())
}

fn type_a(rs: &RootSystem) -> BTreeMap<RootIndex, Derivation> {
    let n = rs.ambient_dim();
    let mut out = BTreeMap::new();
    for i in 1..n {
        for j in i..=n {
            let mut c = vec![Polynomial::zero(n); n];
            for (k, ck) in c.iter_mut().enumerate().take(i) {
                *ck = (i + 1..=j).fold(Polynomial::one(n), |acc, l| acc.mul(&x(n, k + 1).sub(&x(n, l))));
            }
            out.insert(RootIndex::new(i, j), project_mean(rs, c));
        }
    }
    out
}

/// Types B and C share the product formula; C corrects the last column.
fn type_bc(rs: &RootSystem, symplectic: bool) -> BTreeMap<RootIndex, Derivation> {
    let n = rs.rank();
    let mut out = BTreeMap::new();
    for i in 1..=n {
        let last = i + rs.exponents()[i - 1];
        for j in i..=last {
            let mut c = vec![Polynomial::zero(n); n];
            for (k, ck) in c.iter_mut().enumerate().take(i) {
                let k = k + 1;
                *ck = if symplectic && j == last {
                    alpha_product(rs, k, i + 1, j - 1).mul(&x(n, k)).scale(&rational::int(2))
                } else {
                    alpha_product(rs, k, i + 1, j)
                };
            }
            out.insert(RootIndex::new(i, j), deriv(rs, c));
        }
    }
    out
}

fn type_g2(rs: &RootSystem) -> BTreeMap<RootIndex, Derivation> {
    let third = rational::frac(1, 3);
    let v11 = vec![rational::zero(), rational::int(-1), rational::int(1)];
    let v22 = vec![-&third, -&third, rational::frac(2, 3)];
    let q = rs.quotient();
    let mut out = BTreeMap::new();
    let base = Derivation::constant(&v11, q).expect("tangent");
    for j in 1..=6 {
        out.insert(RootIndex::new(1, j), base.mul_poly(&alpha_product(rs, 1, 2, j)));
    }
    out.insert(RootIndex::new(2, 2), Derivation::constant(&v22, q).expect("tangent"));
    // Σ x_k (∂_k - ⅓∂̄)
    let c: Vec<Polynomial> = (1..=3).map(|k| x(3, k)).collect();
    out.insert(RootIndex::new(2, 3), project_mean(rs, c));
    out
}

fn require_d(rs: &RootSystem) -> Result<usize> {
    let t = rs.lie_type();
    if t.family != Family::D {
        return Err(Error::UnsupportedFamily(format!("{t} is not of type D")));
    }
    Ok(t.rank)
}

/// ψ^{D_n}_{0,j} for 1 ≤ j ≤ 2n-3.
pub fn psi_zero_d(rs: &RootSystem, j: usize) -> Result<Derivation> {
    let n = require_d(rs)?;
    if j == 0 || j > 2 * n - 3 {
        return Err(Error::OutOfRange(format!("ψ_(0,{j}) is defined for 1 ≤ j ≤ {}", 2 * n - 3)));
    }
    if j + 2 <= n {
        return Ok(Derivation::zero(n));
    }
    let top: Vec<Polynomial> = (1..=n).map(|k| x_product(n, 1..=n, Some(k)).scale(&sign(n))).collect();
    let top = deriv(rs, top);
    if j == n - 1 {
        return Ok(top);
    }
    Ok(top.mul_poly(&x_product(n, 2 * n - j..=n, None).neg()))
}

/// ξ^{D_n}_i for 0 ≤ i ≤ n-2, with ξ_0 = ψ_{0,n-1}.
pub fn xi_d(rs: &RootSystem, i: usize) -> Result<Derivation> {
    let n = require_d(rs)?;
    if i + 2 > n {
        return Err(Error::OutOfRange(format!("ξ_{i} is defined for 0 ≤ i ≤ {}", n - 2)));
    }
    if i == 0 {
        return psi_zero_d(rs, n - 1);
    }
    let s = sign(n - i);
    let tail = x_product(n, i + 1..=n, None).scale(&s);
    let mut c = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= i {
            let num = (i + 1..n)
                .fold(Polynomial::one(n), |acc, l| acc.mul(&x(n, k).sub(&x(n, l))))
                .mul(&x(n, n))
                .add(&tail);
            c.push(num.div_exact(&x(n, k)).expect("numerator vanishes at x_k = 0"));
        } else {
            c.push(x_product(n, i + 1..=n, Some(k)).scale(&s));
        }
    }
    Ok(deriv(rs, c))
}

fn d_base(rs: &RootSystem, i: usize) -> Derivation {
    let n = rs.rank();
    let mut v = vec![Rational::zero(); n];
    let upto = if i + 2 <= n { i } else { n };
    for c in v.iter_mut().take(upto) {
        *c = Rational::one();
    }
    if i == n - 1 {
        v[n - 1] = -Rational::one();
    }
    Derivation::constant(&v, rs.quotient()).expect("trivial quotient")
}

/// The ψ^{D_n} recursion with the ψ_{0,j} and ξ_i corrections, or the ψ̃
/// recursion when `tilde` is set.
fn type_d(rs: &RootSystem, tilde: bool) -> Result<BTreeMap<RootIndex, Derivation>> {
    let n = require_d(rs)?;
    let xi: Vec<Derivation> = (0..=n - 2).map(|i| xi_d(rs, i)).collect::<Result<_>>()?;
    let mut out: BTreeMap<RootIndex, Derivation> = BTreeMap::new();
    for i in 1..n {
        out.insert(RootIndex::new(i, i), d_base(rs, i));
        for j in i + 1..=2 * n - 1 - i {
            let step = out[&RootIndex::new(i, j - 1)].mul_poly(&alpha(rs, i, j));
            let mut d = if tilde && i == 1 {
                let mut d = step;
                if j == n - 1 {
                    d = d.add(&xi[1]);
                }
                if j == n {
                    d = d.add(&xi[0]);
                }
                d
            } else {
                let prev = if i == 1 { psi_zero_d(rs, j - 1)? } else { out[&RootIndex::new(i - 1, j - 1)].clone() };
                prev.add(&step)
            };
            if j == n - 1 && !(tilde && i == 1) {
                d = d.add(&xi[i]);
            }
            out.insert(RootIndex::new(i, j), d);
        }
    }
    out.insert(RootIndex::new(n, n), d_base(rs, n));
    for j in n + 1..=2 * n - 1 {
        let step = out[&RootIndex::new(n, j - 1)].mul_poly(&alpha(rs, n, j));
        let back = out[&RootIndex::new(2 * n - j, n)].scale(&sign(j - n));
        out.insert(RootIndex::new(n, j), step.add(&back));
    }
    Ok(out)
}

/// ψ̃^{D_n}_{i,j}: the recursion realized by the matrices P^{D_n}_m.
pub fn psi_tilde_d(rs: &RootSystem) -> Result<BTreeMap<RootIndex, Derivation>> {
    type_d(rs, true)
}

/// The closed-form basis of types A, B, C, D and G2.
pub fn closed_form(rs: &RootSystem) -> Result<UniformBasis> {
    let derivs = match rs.lie_type().family {
        Family::A => type_a(rs),
        Family::B => type_bc(rs, false),
        Family::C => type_bc(rs, true),
        Family::D => type_d(rs, false)?,
        Family::G => type_g2(rs),
        _ => {
            return Err(Error::UnsupportedFamily(format!("{} has no closed form; use the matrix recursion", rs.lie_type())))
        }
    };
    Ok(UniformBasis::closed(rs, derivs))
}
