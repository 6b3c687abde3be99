//! Presentations of the cohomology of regular nilpotent Hessenberg varieties.
//!
//! Generators are f_{i,h(i)} = q(ψ_{i,h(i)}), where q sends ∂_k to x_k in
//! orthonormal ambient coordinates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bases::{basis_for_ideal, UniformBasis};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, Mat};
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::{proportionality, Monomial, Polynomial, QuotientSpec};
use crate::ideals::HessenbergFunction;
use crate::rootsys::{Family, LieType, RootSystem};

/// Largest rank accepted by [`graded_rank_oracle`].
pub const ORACLE_MAX_RANK: usize = 3;
/// Largest degree accepted by [`graded_rank_oracle`].
pub const ORACLE_MAX_DEGREE: usize = 8;

/// q(θ) = Σ θ_k x_k, in normal form.
pub fn q_map(theta: &Derivation, q: &QuotientSpec) -> Polynomial {
    let n = theta.nvars();
    let mut out = Polynomial::zero(n);
    for (k, c) in theta.coeffs().iter().enumerate() {
        out = out.add(&c.mul(&Polynomial::var(n, k)));
    }
    q.normalize(&out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub lie_type: LieType,
    pub h: HessenbergFunction,
    pub generators: Vec<Polynomial>,
    /// Coefficients of ∏_i (1 + t + ⋯ + t^{h(i)-i}).
    pub poincare: Vec<u64>,
}

/// Coefficients of ∏_i (1 + t + ⋯ + t^{e_i}).
pub fn poincare_polynomial(exponents: &[usize]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &e in exponents {
        let mut next = vec![0u64; out.len() + e];
        for (d, c) in out.iter().enumerate() {
            for s in 0..=e {
                next[d + s] += c;
            }
        }
        out = next;
    }
    out
}

pub fn generators(rs: &RootSystem, basis: &UniformBasis, h: &HessenbergFunction) -> Result<Presentation> {
    h.check_bounds(rs)?;
    let derivs = basis_for_ideal(basis, h)?;
    let generators = derivs.iter().map(|d| q_map(d, rs.quotient())).collect();
    let exps: Vec<usize> = rs.labels().iter().zip(h.values()).map(|(&i, &j)| j - i).collect();
    Ok(Presentation { lie_type: rs.lie_type(), h: h.clone(), generators, poincare: poincare_polynomial(&exps) })
}

fn x(n: usize, k: usize) -> Polynomial {
    Polynomial::var(n, k - 1)
}

fn prod(n: usize, it: impl Iterator<Item = Polynomial>) -> Polynomial {
    it.fold(Polynomial::one(n), |a, f| a.mul(&f))
}

fn signed(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The closed form of g^{D_n}_{i,j} = q(ψ^{D_n}_{i,j}).
pub fn g_closed_form_d(rs: &RootSystem, i: usize, j: usize) -> Result<Polynomial> {
    let t = rs.lie_type();
    if t.family != Family::D {
        return Err(Error::UnsupportedFamily(format!("{t} is not of type D")));
    }
    let n = t.rank;
    let valid = (1..n).contains(&i) && (i..=2 * n - 1 - i).contains(&j) || i == n && (n..2 * n).contains(&j);
    if !valid {
        return Err(Error::OutOfRange(format!("g({i},{j}) is not an entry of {t}")));
    }
    let nn = rational::int(n as i64);
    let minus = |k: usize, l: usize| x(n, k).sub(&x(n, l));
    let plus = |k: usize, l: usize| x(n, k).add(&x(n, l));
    if i == n {
        let r = 2 * n - 1 - j;
        let mut g = prod(n, (r + 1..=n).map(|l| x(n, l))).scale(&nn);
        for k in 1..=r {
            g = g.add(&prod(n, (r + 1..=n).map(|l| minus(k, l))).scale(&signed(n - r + 1)));
        }
        return Ok(g);
    }
    let mut g = Polynomial::zero(n);
    if j + 2 <= n {
        for k in 1..=i {
            g = g.add(&prod(n, (i + 1..=j).map(|l| minus(k, l))).mul(&x(n, k)));
        }
    } else if j == n - 1 {
        for k in 1..=i {
            g = g.add(&prod(n, (i + 1..n).map(|l| minus(k, l))).mul(&plus(k, n)));
        }
        g = g.add(&prod(n, (i + 1..=n).map(|l| x(n, l))).scale(&(signed(n - i) * &nn)));
    } else {
        let s = j - n;
        for k in 1..=i {
            let a = prod(n, (i + 1..=n).map(|l| minus(k, l)));
            g = g.add(&a.mul(&prod(n, (n - s..=n).map(|l| plus(k, l)))));
        }
        let tail = prod(n, (i + 1..n - s).map(|l| x(n, l))).mul(&prod(n, (n - s..=n).map(|l| x(n, l).pow(2))));
        g = g.add(&tail.scale(&(signed(n - i + 1) * &nn)));
    }
    Ok(g)
}

/// Orthogonal representative in 𝔱 of a linear form given by ambient coefficients.
fn tangent_vector(q: &QuotientSpec, a: &[Rational]) -> Vec<Rational> {
    let rel = q.relations();
    if rel.is_empty() {
        return a.to_vec();
    }
    let dot = |u: &[Rational], v: &[Rational]| -> Rational { u.iter().zip(v).map(|(s, t)| s * t).sum() };
    let gram: Mat = rel.iter().map(|r| rel.iter().map(|s| dot(r, s)).collect()).collect();
    let rhs: Vec<Rational> = rel.iter().map(|r| dot(r, a)).collect();
    let c = linalg::solve(&gram, &rhs).expect("relations are independent");
    let mut v = a.to_vec();
    for (ck, r) in c.iter().zip(rel) {
        for (x, y) in v.iter_mut().zip(r) {
            *x -= ck * y;
        }
    }
    v
}

/// The fundamental weights ϖ_i as linear forms, by row position.
///
/// Solved from 2(ϖ_i, α_j)/(α_j, α_j) = δ_ij with the standard inner product
/// on ambient coordinates.
pub fn fundamental_weights(rs: &RootSystem) -> Result<Vec<Polynomial>> {
    let q = rs.quotient();
    let simple: Vec<Vec<Rational>> =
        (0..rs.rank()).map(|p| tangent_vector(q, &rs.roots()[rs.root_at(p, 1).expect("simple")].coeffs)).collect();
    let mut system: Mat = simple
        .iter()
        .map(|a| {
            let norm: Rational = a.iter().map(|x| x * x).sum();
            a.iter().map(|x| rational::int(2) * x / &norm).collect()
        })
        .collect();
    system.extend(q.relations().iter().cloned());
    let mut out = Vec::with_capacity(rs.rank());
    for i in 0..rs.rank() {
        let mut rhs = vec![Rational::zero(); system.len()];
        rhs[i] = Rational::one();
        let w = linalg::solve(&system, &rhs).ok_or_else(|| Error::Singular("simple roots are dependent".into()))?;
        out.push(q.normalize_linear(&w));
    }
    Ok(out)
}

/// ‖α_i‖² for the simple roots, by row position.
pub fn simple_root_norms(rs: &RootSystem) -> Vec<Rational> {
    (0..rs.rank())
        .map(|p| {
            let v = tangent_vector(rs.quotient(), &rs.roots()[rs.root_at(p, 1).expect("simple")].coeffs);
            v.iter().map(|x| x * x).sum()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PetersonReport {
    pub lie_type: LieType,
    /// f_{i,i+1} / (α_i ϖ_i) when the two are proportional.
    pub ratios: Vec<Option<String>>,
    pub per_generator: bool,
    /// The generated ideals agree (both live in degree 2).
    pub ideal_equal: bool,
}

/// Compare the Peterson generators with α_i ϖ_i.
pub fn peterson_check(rs: &RootSystem, basis: &UniformBasis) -> Result<PetersonReport> {
    let h = HessenbergFunction::new(rs.labels().iter().map(|&l| l + 1).collect());
    let pres = generators(rs, basis, &h)?;
    let weights = fundamental_weights(rs)?;
    let q = rs.quotient();
    let targets: Vec<Polynomial> = (0..rs.rank()).map(|p| q.normalize(&rs.simple_root(p).mul(&weights[p]))).collect();
    let ratios: Vec<Option<Rational>> =
        pres.generators.iter().zip(&targets).map(|(f, t)| proportionality(f, t).filter(|c| !c.is_zero())).collect();
    let per_generator = ratios.iter().all(Option::is_some);
    let ideal_equal = same_span(&pres.generators, &targets);
    Ok(PetersonReport {
        lie_type: rs.lie_type(),
        ratios: ratios.iter().map(|r| r.as_ref().map(rational::to_canonical)).collect(),
        per_generator,
        ideal_equal,
    })
}

fn coefficient_rows(polys: &[Polynomial]) -> Mat {
    let monos: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).collect();
    let index: BTreeMap<Monomial, usize> = monos.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect()
}

/// Whether two families of polynomials span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let all: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
    let rows = coefficient_rows(&all);
    let ra = linalg::rank(&rows[..a.len()].to_vec());
    let rb = linalg::rank(&rows[a.len()..].to_vec());
    let r = linalg::rank(&rows);
    ra == r && rb == r
}

/// Monomials of degree `d` in the variables `vars`.
fn monomials(nvars: usize, vars: &[usize], d: usize) -> Vec<Monomial> {
    let mut layer: BTreeSet<Monomial> = BTreeSet::from([Monomial::from_exponents(&vec![0; nvars]).expect("fits")]);
    for _ in 0..d {
        layer = layer.iter().flat_map(|m| vars.iter().map(move |&v| m.mul(Monomial::var(v)))).collect();
    }
    layer.into_iter().collect()
}

/// dim_ℚ (𝓡/(generators))_d for d = 0..=up_to, by exact linear algebra.
pub fn graded_rank_oracle(q: &QuotientSpec, generators: &[Polynomial], up_to: usize) -> Result<Vec<usize>> {
    let free = q.free_vars();
    if free.len() > ORACLE_MAX_RANK || up_to > ORACLE_MAX_DEGREE {
        return Err(Error::Guardrail(format!(
            "graded rank oracle limited to rank ≤ {ORACLE_MAX_RANK} and degree ≤ {ORACLE_MAX_DEGREE} (got {} and {up_to})",
            free.len()
        )));
    }
    let n = q.ambient_dim();
    let gens: Vec<(usize, Polynomial)> = generators
        .iter()
        .map(|g| {
            let g = q.normalize(g);
            let d = g.homogeneous_degree().ok_or_else(|| Error::Parse("generators must be homogeneous".into()));
            d.map(|d| (d as usize, g))
        })
        .filter(|r| !matches!(r, Ok((_, g)) if g.is_zero()))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(up_to + 1);
    for d in 0..=up_to {
        let basis = monomials(n, &free, d);
        let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut rows: Mat = Vec::new();
        for (e, g) in &gens {
            if *e > d {
                continue;
            }
            for m in monomials(n, &free, d - e) {
                let p = g.mul_term(m, &Rational::one());
                let mut row = vec![Rational::zero(); basis.len()];
                for (mono, c) in p.terms() {
                    row[index[mono]] = c.clone();
                }
                rows.push(row);
            }
        }
        out.push(basis.len() - if rows.is_empty() { 0 } else { linalg::rank(&rows) });
    }
    Ok(out)
}
