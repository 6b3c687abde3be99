//! Uniform bases ψ_{i,j}.
//!
//! Three constructions: closed forms (A, B, C, D, G2), the matrix recursion
//! driven by a [`MatrixFamily`], and restriction of an E8 recursion to the
//! E7 and E6 subsystems. The recursion can be materialized symbolically up
//! to a degree budget and evaluated at exact rational points at any degree.

pub mod closed;
pub mod subsystem;
pub mod tables;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::json;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, Mat};
use crate::exactmath::rational::{self, Rational};
use crate::exactmath::{Polynomial, QuotientSpec};
use crate::ideals::HessenbergFunction;
use crate::rootsys::{Family, LieType, RootIndex, RootSystem};

pub use closed::{closed_form, psi_tilde_d, psi_zero_d, xi_d};
pub use subsystem::{restriction_identity, RestrictionCheck};
pub use tables::paper_matrices;

/// Symbolic materialization budget used by [`default_basis`] for E7 and E8.
pub const E_SERIES_BUDGET: usize = 8;

/// P_m for m = 0..=ht, each square over Λ_m in increasing label order.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily {
    levels: Vec<Mat>,
}

impl MatrixFamily {
    /// Check the level count and sizes against `rs` and that P_0 is diagonal.
    pub fn new(rs: &RootSystem, levels: Vec<Mat>) -> Result<MatrixFamily> {
        if levels.len() != rs.height() + 1 {
            return Err(Error::WrongLength { expected: rs.height() + 1, got: levels.len() });
        }
        for (m, p) in levels.iter().enumerate() {
            let k = rs.lambda_positions(m)?.len();
            if p.len() != k || p.iter().any(|r| r.len() != k) {
                return Err(Error::Parse(format!("P_{m} must be {k}x{k}")));
            }
        }
        let p0 = &levels[0];
        for (r, row) in p0.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if (r == c) == x.is_zero() {
                    return Err(Error::Singular("P_0 must be diagonal with nonzero entries".into()));
                }
            }
        }
        Ok(MatrixFamily { levels })
    }

    pub fn levels(&self) -> &[Mat] {
        &self.levels
    }

    pub fn level(&self, m: usize) -> &Mat {
        &self.levels[m]
    }

    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    /// The p_i on the diagonal of P_0.
    pub fn p0(&self) -> Vec<Rational> {
        (0..self.levels[0].len()).map(|k| self.levels[0][k][k].clone()).collect()
    }

    /// Copy with one entry replaced; used for mutation testing.
    pub fn with_entry(&self, m: usize, r: usize, c: usize, value: Rational) -> MatrixFamily {
        let mut out = self.clone();
        out.levels[m][r][c] = value;
        out
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(m, p)| {
                json!({
                    "m": m,
                    "lambda": rs.lambda_set(m).unwrap_or_default(),
                    "matrix": matrix_json(p),
                })
            })
            .collect();
        json!({ "type": rs.lie_type(), "levels": levels })
    }
}

pub fn matrix_json(p: &Mat) -> serde_json::Value {
    p.iter().map(|r| r.iter().map(rational::to_canonical).collect::<Vec<_>>()).collect()
}

#[derive(Clone, Debug)]
pub enum BasisSource {
    ClosedForm,
    Recursion(MatrixFamily),
    /// Restriction of the recursion of `parent` to the labels `subset`.
    Restriction { parent: LieType, subset: Vec<usize>, matrices: MatrixFamily },
}

impl BasisSource {
    pub fn name(&self) -> &'static str {
        match self {
            BasisSource::ClosedForm => "closed-form",
            BasisSource::Recursion(_) => "recursion",
            BasisSource::Restriction { .. } => "restriction",
        }
    }
}

/// Data for running the ψ recursion at a point.
#[derive(Clone, Debug)]
struct Engine {
    labels: Vec<usize>,
    exponents: Vec<usize>,
    /// ψ_{i,i} as an ambient vector, by row position.
    base: Vec<Vec<Rational>>,
    /// forms[p][s-1]: ambient coefficients of α_{i,i+s}.
    forms: Vec<Vec<Vec<Rational>>>,
    matrices: MatrixFamily,
}

impl Engine {
    fn lambda(&self, m: usize) -> Vec<usize> {
        (0..self.labels.len()).filter(|&p| self.exponents[p] >= m).collect()
    }

    /// Run the recursion up to level `top` with a caller-supplied carrier.
    ///
    /// `times(p, s, v)` multiplies v by α_{p,p+s}; `combine` forms a rational
    /// linear combination. Returns rows[p][m] for m ≤ min(top, e_p).
    fn run<T: Clone>(
        &self,
        top: usize,
        base: Vec<T>,
        times: impl Fn(usize, usize, &T) -> T,
        combine: impl Fn(&[(Rational, T)]) -> T,
    ) -> Vec<Vec<T>> {
        let mut rows: Vec<Vec<T>> = base.into_iter().map(|b| vec![b]).collect();
        for m in 1..=top.min(self.matrices.height()) {
            let lam = self.lambda(m);
            let theta: Vec<T> = lam.iter().map(|&q| times(q, m, &rows[q][m - 1])).collect();
            let p = self.matrices.level(m);
            let next: Vec<T> = (0..lam.len())
                .map(|r| {
                    let terms: Vec<(Rational, T)> = (0..lam.len())
                        .filter(|&c| !p[r][c].is_zero())
                        .map(|c| (p[r][c].clone(), theta[c].clone()))
                        .collect();
                    combine(&terms)
                })
                .collect();
            for (&q, v) in lam.iter().zip(next) {
                rows[q].push(v);
            }
        }
        rows
    }

    fn symbolic(&self, q: &QuotientSpec, top: usize) -> Result<Vec<Vec<Derivation>>> {
        let n = q.ambient_dim();
        let forms: Vec<Vec<Polynomial>> =
            self.forms.iter().map(|row| row.iter().map(|c| q.normalize_linear(c)).collect()).collect();
        let base = self.base.iter().map(|v| Derivation::constant(v, q)).collect::<Result<Vec<_>>>()?;
        Ok(self.run(
            top,
            base,
            |p, s, v| v.mul_poly(&forms[p][s - 1]),
            |terms| {
                let mut acc = Derivation::zero(n);
                for (c, d) in terms {
                    acc = acc.add(&d.scale(c));
                }
                acc
            },
        ))
    }

    fn numeric(&self, point: &[Rational]) -> Vec<Vec<Vec<Rational>>> {
        let values: Vec<Vec<Rational>> = self
            .forms
            .iter()
            .map(|row| row.iter().map(|c| c.iter().zip(point).map(|(a, x)| a * x).sum()).collect())
            .collect();
        self.run(
            usize::MAX,
            self.base.clone(),
            |p, s, v| v.iter().map(|x| x * &values[p][s - 1]).collect(),
            |terms| {
                let mut acc = vec![Rational::zero(); point.len()];
                for (c, v) in terms {
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a += c * x;
                    }
                }
                acc
            },
        )
    }
}

/// A family ψ_{i,j}, i ≤ j ≤ i + e_i, indexed by (label, column).
#[derive(Clone, Debug)]
pub struct UniformBasis {
    lie_type: LieType,
    labels: Vec<usize>,
    exponents: Vec<usize>,
    quotient: QuotientSpec,
    source: BasisSource,
    derivs: BTreeMap<RootIndex, Derivation>,
    /// Every materialized entry of the underlying recursion. For a
    /// restriction this covers the parent's index grid; otherwise it equals
    /// `derivs`.
    grid: BTreeMap<RootIndex, Derivation>,
    budget: usize,
    engine: Option<Engine>,
}

impl UniformBasis {
    fn closed(rs: &RootSystem, derivs: BTreeMap<RootIndex, Derivation>) -> UniformBasis {
        UniformBasis {
            lie_type: rs.lie_type(),
            labels: rs.labels().to_vec(),
            exponents: rs.exponents().to_vec(),
            quotient: rs.quotient().clone(),
            source: BasisSource::ClosedForm,
            grid: derivs.clone(),
            derivs,
            budget: rs.height(),
            engine: None,
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn quotient(&self) -> &QuotientSpec {
        &self.quotient
    }

    pub fn source(&self) -> &BasisSource {
        &self.source
    }

    /// Largest materialized degree j - i.
    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn height(&self) -> usize {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.budget >= self.height()
    }

    /// Every materialized ψ_{i,j}.
    pub fn derivs(&self) -> &BTreeMap<RootIndex, Derivation> {
        &self.derivs
    }

    /// Materialized entries of the full recursion grid (see [`restrict_basis`]).
    pub fn grid(&self) -> &BTreeMap<RootIndex, Derivation> {
        &self.grid
    }

    /// All valid indices (i, j), materialized or not, in order.
    pub fn indices(&self) -> Vec<RootIndex> {
        self.labels
            .iter()
            .zip(&self.exponents)
            .flat_map(|(&l, &e)| (0..=e).map(move |s| RootIndex::new(l, l + s)))
            .collect()
    }

    pub fn contains(&self, r: RootIndex) -> bool {
        self.labels
            .iter()
            .position(|&l| l == r.i)
            .is_some_and(|p| r.j >= r.i && r.j - r.i <= self.exponents[p])
    }

    pub fn get(&self, r: RootIndex) -> Result<&Derivation> {
        if !self.contains(r) {
            return Err(Error::OutOfRange(format!("ψ{r} is not an entry of the {} basis", self.lie_type)));
        }
        self.derivs
            .get(&r)
            .ok_or(Error::NotMaterialized { i: r.i, j: r.j, budget: self.budget as u32 })
    }

    /// Values ψ_{i,j}(point) for every entry of the basis, at any degree.
    pub fn evaluate_at(&self, point: &[Rational]) -> Result<BTreeMap<RootIndex, Vec<Rational>>> {
        let full = self.evaluate_grid_at(point)?;
        Ok(full.into_iter().filter(|(r, _)| self.contains(*r)).collect())
    }

    /// Values of every entry of the underlying recursion grid at `point`.
    pub fn evaluate_grid_at(&self, point: &[Rational]) -> Result<BTreeMap<RootIndex, Vec<Rational>>> {
        if point.len() != self.quotient.ambient_dim() {
            return Err(Error::WrongLength { expected: self.quotient.ambient_dim(), got: point.len() });
        }
        match &self.engine {
            Some(engine) => {
                let rows = engine.numeric(point);
                let mut out = BTreeMap::new();
                for (p, row) in rows.into_iter().enumerate() {
                    let l = engine.labels[p];
                    for (s, v) in row.into_iter().enumerate() {
                        out.insert(RootIndex::new(l, l + s), v);
                    }
                }
                Ok(out)
            }
            None => self.grid.iter().map(|(r, d)| Ok((*r, d.evaluate(point)?))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .derivs
            .iter()
            .map(|(r, d)| json!({ "i": r.i, "j": r.j, "degree": r.j - r.i, "derivation": d.to_json() }))
            .collect();
        json!({
            "type": self.lie_type,
            "source": self.source.name(),
            "budget": self.budget,
            "complete": self.is_complete(),
            "entries": entries,
        })
    }
}

fn forms_of(rs: &RootSystem) -> Vec<Vec<Vec<Rational>>> {
    (0..rs.rank())
        .map(|p| {
            (1..=rs.exponents()[p])
                .map(|s| rs.roots()[rs.root_at(p, s).expect("in range")].coeffs.clone())
                .collect()
        })
        .collect()
}

fn check_invertible(m: &MatrixFamily) -> Result<()> {
    // with_entry can break the P_0 shape that new() checked.
    let p0 = m.level(0);
    if p0.iter().enumerate().any(|(r, row)| row.iter().enumerate().any(|(c, x)| (r == c) == x.is_zero())) {
        return Err(Error::Singular("P_0 must be diagonal with nonzero entries".into()));
    }
    for (k, p) in m.levels().iter().enumerate() {
        linalg::inverse(p).map_err(|_| Error::Singular(format!("P_{k} is singular")))?;
    }
    Ok(())
}

fn collect_rows(labels: &[usize], rows: Vec<Vec<Derivation>>) -> BTreeMap<RootIndex, Derivation> {
    let mut out = BTreeMap::new();
    for (p, row) in rows.into_iter().enumerate() {
        for (s, d) in row.into_iter().enumerate() {
            out.insert(RootIndex::new(labels[p], labels[p] + s), d);
        }
    }
    out
}

/// The ψ recursion driven by `m`, fully materialized.
pub fn build_from_matrices(rs: &RootSystem, m: &MatrixFamily) -> Result<UniformBasis> {
    build_with_budget(rs, m, rs.height())
}

/// The ψ recursion driven by `m`, materialized up to degree `budget`.
pub fn build_with_budget(rs: &RootSystem, m: &MatrixFamily, budget: usize) -> Result<UniformBasis> {
    check_invertible(m)?;
    if m.height() != rs.height() {
        return Err(Error::WrongLength { expected: rs.height() + 1, got: m.height() + 1 });
    }
    let p0 = m.p0();
    let engine = Engine {
        labels: rs.labels().to_vec(),
        exponents: rs.exponents().to_vec(),
        base: (0..rs.rank()).map(|p| rs.coweight(p).iter().map(|c| c * &p0[p]).collect()).collect(),
        forms: forms_of(rs),
        matrices: m.clone(),
    };
    let budget = budget.min(rs.height());
    let derivs = collect_rows(rs.labels(), engine.symbolic(rs.quotient(), budget)?);
    Ok(UniformBasis {
        lie_type: rs.lie_type(),
        labels: rs.labels().to_vec(),
        exponents: rs.exponents().to_vec(),
        quotient: rs.quotient().clone(),
        source: BasisSource::Recursion(m.clone()),
        grid: derivs.clone(),
        derivs,
        budget,
        engine: Some(engine),
    })
}

/// The restriction of an E8 recursion basis to the subsystem on `subset`.
///
/// `subset` lists E8 labels: all of them (identity), `{1,3,…,8}` (E7) or
/// `{1,4,…,8}` (E6).
pub fn restrict_basis(rs: &RootSystem, subset: &[usize], basis: &UniformBasis, budget: usize) -> Result<UniformBasis> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::UnsupportedRestriction("empty subset".into()));
    }
    if s == rs.labels() {
        return Ok(basis.clone());
    }
    let sub_type = match (rs.lie_type().family, rs.rank(), s.as_slice()) {
        (Family::E, 8, [1, 3, 4, 5, 6, 7, 8]) => LieType::new(Family::E, 7)?,
        (Family::E, 8, [1, 4, 5, 6, 7, 8]) => LieType::new(Family::E, 6)?,
        _ => {
            return Err(Error::UnsupportedRestriction(format!(
                "{} with labels {s:?} is not an irreducible subsystem handled here",
                rs.lie_type()
            )))
        }
    };
    let matrices = match basis.source() {
        BasisSource::Recursion(m) => m.clone(),
        _ => return Err(Error::UnsupportedRestriction("restriction needs a recursion basis".into())),
    };
    let sub = RootSystem::build(sub_type)?;
    let q = sub.quotient();
    let p0 = matrices.p0();
    let n = rs.ambient_dim();
    let base: Vec<Vec<Rational>> = (0..rs.rank())
        .map(|p| match sub.position(rs.labels()[p]) {
            Some(sp) => sub.coweight(sp).iter().map(|c| c * &p0[p]).collect(),
            None => vec![Rational::zero(); n],
        })
        .collect();
    let engine = Engine {
        labels: rs.labels().to_vec(),
        exponents: rs.exponents().to_vec(),
        base,
        forms: forms_of(rs),
        matrices: matrices.clone(),
    };
    let budget = budget.min(sub.height());
    let grid = collect_rows(rs.labels(), engine.symbolic(q, budget)?);
    let mut derivs = BTreeMap::new();
    for (p, &l) in sub.labels().iter().enumerate() {
        for s in 0..=sub.exponents()[p].min(budget) {
            let r = RootIndex::new(l, l + s);
            derivs.insert(r, grid[&r].clone());
        }
    }
    Ok(UniformBasis {
        lie_type: sub_type,
        labels: sub.labels().to_vec(),
        exponents: sub.exponents().to_vec(),
        quotient: q.clone(),
        source: BasisSource::Restriction { parent: rs.lie_type(), subset: s, matrices },
        derivs,
        grid,
        budget,
        engine: Some(engine),
    })
}

/// The basis used by the CLI and the verification campaigns.
///
/// Closed forms for A, B, C, D and G2; the matrix recursion for F4 and E8;
/// restriction from E8 for E7 and E6. E7 and E8 are materialized up to
/// [`E_SERIES_BUDGET`] and evaluated pointwise beyond it.
pub fn default_basis(rs: &RootSystem) -> Result<UniformBasis> {
    let t = rs.lie_type();
    match t.family {
        Family::A | Family::B | Family::C | Family::D | Family::G => closed_form(rs),
        Family::F => build_from_matrices(rs, &paper_matrices(rs)?),
        Family::E => {
            let e8 = RootSystem::build(LieType::new(Family::E, 8)?)?;
            let budget = if t.rank == 6 { e8.height() } else { E_SERIES_BUDGET };
            let parent = build_with_budget(&e8, &paper_matrices(&e8)?, if t.rank == 8 { budget } else { 0 })?;
            match t.rank {
                8 => Ok(parent),
                7 => restrict_basis(&e8, &[1, 3, 4, 5, 6, 7, 8], &parent, budget),
                _ => restrict_basis(&e8, &[1, 4, 5, 6, 7, 8], &parent, budget),
            }
        }
    }
}

/// (ψ_{1,h(1)}, …, ψ_{n,h(n)}).
pub fn basis_for_ideal(basis: &UniformBasis, h: &HessenbergFunction) -> Result<Vec<Derivation>> {
    if h.values().len() != basis.labels.len() {
        return Err(Error::WrongLength { expected: basis.labels.len(), got: h.values().len() });
    }
    basis
        .labels
        .iter()
        .zip(h.values())
        .map(|(&l, &v)| basis.get(RootIndex::new(l, v)).cloned())
        .collect()
}
