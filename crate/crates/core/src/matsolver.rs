//! The multiple addition construction along the chain I_0 ⊂ I_1 ⊂ ⋯:
//! restriction classes, the polynomials b_ν, the coefficient matrices C_m,
//! solving P_m C_m = δ, and the row-operation equivalence of matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bases::{matrix_json, UniformBasis};
use crate::derivation::{dual_basis, Derivation};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, Mat};
use crate::exactmath::sample::random_point_on;
use crate::exactmath::{proportionality, Polynomial, Rational};
use crate::ideals::LowerIdeal;
use crate::rootsys::{RootIndex, RootSystem};

/// The map ν for one added root β: members of I′ grouped by their
/// restriction to ker β, one representative per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionChoice {
    pub target: RootIndex,
    pub classes: Vec<Vec<RootIndex>>,
    pub representatives: Vec<RootIndex>,
}

impl RestrictionChoice {
    /// Group the members of `iprime` by proportional restriction to β = 0.
    /// The representative of a class is its least (i, j).
    pub fn new(rs: &RootSystem, iprime: &LowerIdeal, beta: RootIndex) -> Result<RestrictionChoice> {
        let b = rs
            .index_of(beta)
            .ok_or_else(|| Error::OutOfRange(format!("no root α{beta} in {}", rs.lie_type())))?;
        if iprime.contains(b) {
            return Err(Error::OutOfRange(format!("α{beta} already lies in I'")));
        }
        let bform = &rs.roots()[b].form;
        let mut classes: Vec<(Polynomial, Vec<RootIndex>)> = Vec::new();
        for k in iprime.indices() {
            let root = &rs.roots()[k];
            let r = root.form.restrict_to(bform)?;
            match classes.iter_mut().find(|(f, _)| proportionality(&r, f).is_some()) {
                Some((_, members)) => members.push(root.index),
                None => classes.push((r, vec![root.index])),
            }
        }
        let mut classes: Vec<Vec<RootIndex>> = classes
            .into_iter()
            .map(|(_, mut m)| {
                m.sort();
                m
            })
            .collect();
        classes.sort();
        let representatives = classes.iter().map(|c| c[0]).collect();
        Ok(RestrictionChoice { target: beta, classes, representatives })
    }

    /// Number of roots of I′ that are not representatives: deg b_ν.
    pub fn degree(&self) -> usize {
        self.classes.iter().map(|c| c.len() - 1).sum()
    }

    fn non_representatives(&self) -> impl Iterator<Item = &RootIndex> {
        self.classes.iter().flat_map(|c| c.iter().skip(1))
    }
}

/// b_ν: the product of the roots of I′ that are not representatives.
pub fn b_nu(rs: &RootSystem, choice: &RestrictionChoice) -> Result<Polynomial> {
    let mut out = Polynomial::one(rs.ambient_dim());
    for r in choice.non_representatives() {
        out = out.mul(rs.root(*r)?);
    }
    Ok(out)
}

/// b_ν evaluated at a point, without expanding the product.
pub fn b_nu_at(rs: &RootSystem, choice: &RestrictionChoice, point: &[Rational]) -> Result<Rational> {
    let mut out = Rational::one();
    for r in choice.non_representatives() {
        out *= rs.root(*r)?.evaluate(point)?;
    }
    Ok(out)
}

/// C_m with rows over Λ_m and columns over Λ_{m+1} (labels).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientMatrix {
    pub m: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(serialize_with = "ser_mat")]
    pub entries: Mat,
}

fn ser_mat<S: serde::Serializer>(m: &Mat, s: S) -> std::result::Result<S::Ok, S::Error> {
    matrix_json(m).serialize(s)
}

impl CoefficientMatrix {
    pub fn rank(&self) -> usize {
        if self.cols.is_empty() {
            0
        } else {
            linalg::rank(&self.entries)
        }
    }
}

fn next_lambda(rs: &RootSystem, m: usize) -> Result<Vec<usize>> {
    if m >= rs.height() {
        Ok(Vec::new())
    } else {
        rs.lambda_set(m + 1)
    }
}

/// The ideal I_m of roots of height at most m.
pub fn chain_ideal(rs: &RootSystem, m: usize) -> LowerIdeal {
    LowerIdeal::of_height(rs, m)
}

/// C_m from the derivations θ_i (i ∈ Λ_m), each of degree m and in D(A_{I_m}).
///
/// c_ij is the constant with θ_i(β_j) ≡ c_ij·b_ν mod β_j, β_j = α_{j,j+m+1}.
pub fn c_matrix(rs: &RootSystem, theta: &BTreeMap<usize, Derivation>, m: usize) -> Result<CoefficientMatrix> {
    let rows = rs.lambda_set(m)?;
    let cols = next_lambda(rs, m)?;
    let iprime = chain_ideal(rs, m);
    let mut entries = linalg::zeros(rows.len(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        let beta_idx = RootIndex::new(j, j + m + 1);
        let beta = rs.root(beta_idx)?;
        let choice = RestrictionChoice::new(rs, &iprime, beta_idx)?;
        let b = b_nu(rs, &choice)?.restrict_to(beta)?;
        for (r, i) in rows.iter().enumerate() {
            let th = theta
                .get(i)
                .ok_or_else(|| Error::OutOfRange(format!("no θ for row {i} at level {m}")))?;
            let v = th.apply(beta).restrict_to(beta)?;
            entries[r][c] = if v.is_zero() {
                Rational::zero()
            } else {
                proportionality(&v, &b).ok_or_else(|| {
                    Error::Prop23Violated(format!("θ_({i},{}) at α{beta_idx}", i + m))
                })?
            };
        }
    }
    Ok(CoefficientMatrix { m, rows, cols, entries })
}

/// C_m from point values of a basis: c_ij = θ_i(β_j)(x) / b_ν(x) at random
/// points x with β_j(x) = 0, required to agree across `points` samples.
pub fn c_matrix_sampled<R: Rng>(
    rs: &RootSystem,
    basis: &UniformBasis,
    m: usize,
    points: usize,
    rng: &mut R,
) -> Result<CoefficientMatrix> {
    let rows = rs.lambda_set(m)?;
    let cols = next_lambda(rs, m)?;
    let iprime = chain_ideal(rs, m);
    let mut entries = linalg::zeros(rows.len(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        let beta_idx = RootIndex::new(j, j + m + 1);
        let beta = rs.root(beta_idx)?;
        let bcoeffs = &rs.roots()[rs.index_of(beta_idx).expect("checked")].coeffs;
        let choice = RestrictionChoice::new(rs, &iprime, beta_idx)?;
        let mut seen: Vec<Option<Rational>> = vec![None; rows.len()];
        let mut used = 0;
        let mut attempts = 0;
        while used < points {
            attempts += 1;
            if attempts > 20 * points {
                return Err(Error::Prop23Violated(format!("b_ν vanishes on every sample of α{beta_idx} = 0")));
            }
            let pt = random_point_on(rs.quotient(), beta, rng);
            let bv = b_nu_at(rs, &choice, &pt)?;
            if bv.is_zero() {
                continue;
            }
            used += 1;
            let vals = basis.evaluate_at(&pt)?;
            for (r, &i) in rows.iter().enumerate() {
                let psi = &vals[&RootIndex::new(i, i + m.saturating_sub(1))];
                let mut th: Rational = psi.iter().zip(bcoeffs).map(|(a, b)| a * b).sum();
                if m > 0 {
                    th *= rs.root(RootIndex::new(i, i + m))?.evaluate(&pt)?;
                }
                let cij = th / &bv;
                match &seen[r] {
                    Some(prev) if *prev != cij => {
                        return Err(Error::Prop23Violated(format!(
                            "θ_({i},{}) at α{beta_idx}: ratio differs between samples",
                            i + m
                        )))
                    }
                    _ => seen[r] = Some(cij),
                }
            }
        }
        for (r, v) in seen.into_iter().enumerate() {
            entries[r][c] = v.expect("points > 0");
        }
    }
    Ok(CoefficientMatrix { m, rows, cols, entries })
}

/// An invertible P with P·C = δ. Rows in Λ_{m+1} solve the linear system;
/// the remaining rows are a reduced row-echelon basis of the left kernel.
pub fn solve_p(c: &CoefficientMatrix) -> Result<Mat> {
    let k = c.rows.len();
    let q = c.cols.len();
    if q == 0 {
        return Ok(linalg::identity(k));
    }
    let rank = c.rank();
    if rank != q {
        return Err(Error::RankDeficient { expected: q, got: rank });
    }
    let ct = linalg::transpose(&c.entries);
    let mut kernel = linalg::left_kernel(&c.entries).into_iter();
    let mut p = Vec::with_capacity(k);
    for i in &c.rows {
        match c.cols.iter().position(|j| j == i) {
            Some(col) => {
                let mut e = vec![Rational::zero(); q];
                e[col] = Rational::one();
                p.push(linalg::solve(&ct, &e).ok_or(Error::RankDeficient { expected: q, got: rank })?);
            }
            None => p.push(kernel.next().ok_or(Error::RankDeficient { expected: q, got: rank })?),
        }
    }
    linalg::inverse(&p).map_err(|_| Error::Singular("completed P_m is singular".into()))?;
    Ok(p)
}

/// Whether Q arises from P by scaling rows and adding multiples of rows in
/// Λ_m ∖ Λ_{m+1}: every column of Q·P⁻¹ indexed by Λ_{m+1} must be a
/// nonzero multiple of the matching standard basis column.
pub fn equivalent(p: &Mat, q: &Mat, lam_m: &[usize], lam_m1: &[usize]) -> Result<bool> {
    let pinv = linalg::inverse(p)?;
    linalg::inverse(q)?;
    if p.len() != lam_m.len() || q.len() != lam_m.len() {
        return Err(Error::WrongLength { expected: lam_m.len(), got: p.len().min(q.len()) });
    }
    let e = linalg::mul(q, &pinv);
    for (col, label) in lam_m.iter().enumerate() {
        if !lam_m1.contains(label) {
            continue;
        }
        for (row, r) in e.iter().enumerate() {
            if (row == col) == r[col].is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub m: usize,
    pub lambda: Vec<usize>,
    pub rank: usize,
    pub rank_ok: bool,
    #[serde(serialize_with = "ser_mat")]
    pub solved: Mat,
    /// Equivalence with the reference P_m, when one is given.
    pub equivalent: Option<bool>,
}

/// Solve P_0, …, P_ht along the chain I_m.
///
/// With a reference family, θ at each level is formed from the reference
/// recursion, which is the setting in which solved and reference matrices
/// must be equivalent. Without one, the solved matrices drive the recursion.
pub fn solve_chain(rs: &RootSystem, reference: Option<&crate::bases::MatrixFamily>) -> Result<Vec<LevelReport>> {
    let n = rs.ambient_dim();
    let mut layer: BTreeMap<usize, Derivation> = BTreeMap::new();
    for &l in rs.labels() {
        layer.insert(l, dual_basis(rs, l)?);
    }
    let mut reports = Vec::new();
    for m in 0..=rs.height() {
        let lam = rs.lambda_set(m)?;
        // θ_i = α_{i,i+m} ψ_{i,i+m-1}, with θ_i = α_i^* at m = 0.
        let theta: BTreeMap<usize, Derivation> = lam
            .iter()
            .map(|&i| {
                let d = &layer[&i];
                Ok((i, if m == 0 { d.clone() } else { d.mul_poly(rs.root(RootIndex::new(i, i + m))?) }))
            })
            .collect::<Result<_>>()?;
        let c = c_matrix(rs, &theta, m)?;
        let rank = c.rank();
        let solved = solve_p(&c)?;
        let next_lam = next_lambda(rs, m)?;
        let (used, equivalent) = match reference {
            Some(fam) => {
                let r = fam.level(m).clone();
                let eq = equivalent(&solved, &r, &lam, &next_lam)?;
                (r, Some(eq))
            }
            None => (solved.clone(), None),
        };
        let mut next = BTreeMap::new();
        for (row, &i) in lam.iter().enumerate() {
            let mut acc = Derivation::zero(n);
            for (col, &j) in lam.iter().enumerate() {
                if !used[row][col].is_zero() {
                    acc = acc.add(&theta[&j].scale(&used[row][col]));
                }
            }
            next.insert(i, acc);
        }
        layer = next;
        reports.push(LevelReport { m, lambda: lam, rank, rank_ok: rank == c.cols.len(), solved, equivalent });
    }
    Ok(reports)
}

/// [`solve_chain`] with C_m read off point values of `basis`.
///
/// θ comes from `basis`, so a reference family should be the one that built
/// it. Used for E7 and E8, where θ is too large to expand.
pub fn solve_chain_sampled(
    rs: &RootSystem,
    basis: &UniformBasis,
    reference: Option<&crate::bases::MatrixFamily>,
    points: usize,
    seed: u64,
) -> Result<Vec<LevelReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for m in 0..=rs.height() {
        let lam = rs.lambda_set(m)?;
        let next_lam = next_lambda(rs, m)?;
        let c = c_matrix_sampled(rs, basis, m, points, &mut rng)?;
        let rank = c.rank();
        let solved = solve_p(&c)?;
        let equivalent = match reference {
            Some(fam) => Some(equivalent(&solved, fam.level(m), &lam, &next_lam)?),
            None => None,
        };
        reports.push(LevelReport { m, lambda: lam, rank, rank_ok: rank == c.cols.len(), solved, equivalent });
    }
    Ok(reports)
}
