//! Root system data: positive roots in (i, j) coordinates, the root poset,
//! exponents and the sets Λ_m.
//!
//! Rows are addressed by *label*. For every type except E7 and E6 the labels
//! are 1..=n. E7 and E6 are carved out of E8 and keep the E8 labels of the
//! surviving rows: `[1, 3, 4, 5, 6, 7, 8]` and `[1, 4, 5, 6, 7, 8]`.

pub mod tables;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::linalg;
use crate::exactmath::poly::Polynomial;
use crate::exactmath::quotient::{QuotientJson, QuotientSpec};
use crate::exactmath::rational::{self, Rational};

/// Largest number of positive roots; ideals are stored as `u128` bitmasks.
pub const MAX_ROOTS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let ok = match family {
            // A_n lives in n+1 ambient coordinates.
            Family::A => (1..=14).contains(&rank),
            Family::B | Family::C => (2..=11).contains(&rank),
            Family::D => (4..=11).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else if family == Family::D && rank < 4 {
            Err(Error::InvalidType(format!(
                "D{rank} is not supported: type D requires rank at least 4 (D2 and D3 are A1xA1 and A3)"
            )))
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank} is not a supported type")))
        }
    }

    /// Number of ambient coordinates.
    pub fn ambient_dim(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::E => 8,
            Family::G => 3,
            _ => self.rank,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(format!("cannot parse type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("cannot parse rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Grid coordinate (i, j). With j > i it names the root α_{i,j}; (i, i)
/// names the slot of ψ_{i,i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootIndex {
    pub i: usize,
    pub j: usize,
}

impl RootIndex {
    pub fn new(i: usize, j: usize) -> RootIndex {
        RootIndex { i, j }
    }
}

impl fmt::Display for RootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub index: RootIndex,
    /// Ambient coefficients of the normal form.
    pub coeffs: Vec<Rational>,
    pub form: Polynomial,
    /// Coefficients in the simple roots, by row position.
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> usize {
        self.coords.iter().sum::<i64>() as usize
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    labels: Vec<usize>,
    exponents: Vec<usize>,
    quotient: QuotientSpec,
    roots: Vec<Root>,
    row_start: Vec<usize>,
    coweights: Vec<Vec<Rational>>,
    /// (lower, upper) pairs of root indices with upper ⋗ lower.
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<u128>,
}

impl RootSystem {
    pub fn build(t: LieType) -> Result<RootSystem> {
        let n = t.rank;
        match (t.family, n) {
            (Family::A, _) => {
                let q = QuotientSpec::new(n + 1, vec![vec![rational::one(); n + 1]])?;
                Self::assemble(t, (1..=n).collect(), q, tables::type_a(n + 1))
            }
            (Family::B, _) => Self::assemble(t, (1..=n).collect(), QuotientSpec::trivial(n), tables::type_b(n)),
            (Family::C, _) => Self::assemble(t, (1..=n).collect(), QuotientSpec::trivial(n), tables::type_c(n)),
            (Family::D, _) => Self::assemble(t, (1..=n).collect(), QuotientSpec::trivial(n), tables::type_d(n)),
            (Family::F, 4) => Self::assemble(t, (1..=4).collect(), QuotientSpec::trivial(4), tables::type_f4()),
            (Family::G, 2) => {
                let q = QuotientSpec::new(3, vec![vec![rational::one(); 3]])?;
                Self::assemble(t, vec![1, 2], q, tables::type_g2())
            }
            (Family::E, 8) => Self::assemble(t, (1..=8).collect(), QuotientSpec::trivial(8), tables::type_e8()),
            (Family::E, 7) => Self::restricted_from_e8(t, &[2]),
            (Family::E, 6) => Self::restricted_from_e8(t, &[2, 3]),
            _ => Err(Error::InvalidType(t.to_string())),
        }
    }

    /// Carve E7 or E6 out of E8 by dropping the rows in `removed`.
    ///
    /// The ambient space is cut by the coweights of the removed simple roots.
    /// Each surviving row keeps its longest prefix of roots free of the
    /// removed simple roots; the remainder of the row must consist only of
    /// roots that involve them.
    fn restricted_from_e8(t: LieType, removed: &[usize]) -> Result<RootSystem> {
        let e8 = RootSystem::build(LieType::new(Family::E, 8)?)?;
        let relations: Vec<Vec<Rational>> = removed.iter().map(|&l| e8.coweights[l - 1].clone()).collect();
        let q = QuotientSpec::new(8, relations)?;
        let labels: Vec<usize> = (1..=8).filter(|l| !removed.contains(l)).collect();
        let rows = labels
            .iter()
            .map(|&l| {
                let p = l - 1;
                let row = &e8.roots[e8.row_start[p]..e8.row_start[p] + e8.exponents[p]];
                let keep = row
                    .iter()
                    .take_while(|r| removed.iter().all(|&k| r.coords[k - 1] == 0))
                    .count();
                if row[keep..].iter().any(|r| removed.iter().all(|&k| r.coords[k - 1] == 0)) {
                    return Err(Error::UnsupportedRestriction(format!(
                        "row {l} of E8 does not restrict to a prefix"
                    )));
                }
                Ok(row[..keep].iter().map(|r| r.coeffs.clone()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(t, labels, q, rows)
    }

    fn assemble(t: LieType, labels: Vec<usize>, quotient: QuotientSpec, rows: Vec<tables::Row>) -> Result<RootSystem> {
        let n = labels.len();
        let dim = quotient.ambient_dim();
        let exponents: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        let total: usize = exponents.iter().sum();
        if total > MAX_ROOTS {
            return Err(Error::InvalidType(format!("{t} has {total} positive roots, more than {MAX_ROOTS}")));
        }
        let normal = |c: &[Rational]| -> Vec<Rational> {
            quotient.normalize_linear(c).linear_coeffs().expect("linear form stays linear")
        };

        // Coweights: tangent vectors dual to the simple roots α_{i,i+1}.
        let mut system: Vec<Vec<Rational>> = rows.iter().map(|r| normal(&r[0])).collect();
        system.extend(quotient.relations().iter().cloned());
        if system.len() != dim {
            return Err(Error::Singular(format!("{t}: rank plus relations is not the ambient dimension")));
        }
        let inv = linalg::inverse(&system)?;
        let coweights: Vec<Vec<Rational>> = (0..n).map(|i| (0..dim).map(|k| inv[k][i].clone()).collect()).collect();

        let mut roots = Vec::with_capacity(total);
        let mut row_start = Vec::with_capacity(n);
        for (p, row) in rows.iter().enumerate() {
            row_start.push(roots.len());
            for (off, raw) in row.iter().enumerate() {
                let coeffs = normal(raw);
                let coords = coweights
                    .iter()
                    .map(|w| {
                        let v: Rational = coeffs.iter().zip(w).map(|(a, b)| a * b).sum();
                        if !v.is_integer() {
                            return Err(Error::InvalidType(format!("{t}: non-integral root coordinate")));
                        }
                        Ok(v.to_integer().to_i64().expect("small coordinate"))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                let label = labels[p];
                roots.push(Root {
                    index: RootIndex::new(label, label + off + 1),
                    form: Polynomial::linear(&coeffs),
                    coeffs,
                    coords,
                });
            }
        }

        let by_coords: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();
        let mut covers = Vec::new();
        let mut lower_covers = vec![0u128; roots.len()];
        for (b, beta) in roots.iter().enumerate() {
            for s in 0..n {
                if beta.coords[s] == 0 {
                    continue;
                }
                let mut c = beta.coords.clone();
                c[s] -= 1;
                if let Some(&a) = by_coords.get(&c) {
                    covers.push((a, b));
                    lower_covers[b] |= 1u128 << a;
                }
            }
        }
        covers.sort_unstable();

        Ok(RootSystem { lie_type: t, labels, exponents, quotient, roots, row_start, coweights, covers, lower_covers })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn quotient(&self) -> &QuotientSpec {
        &self.quotient
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Row position of a label.
    pub fn position(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Exponents e_i in row order.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Mask with every positive root set.
    pub fn full_mask(&self) -> u128 {
        if self.roots.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.roots.len()) - 1
        }
    }

    /// Index into [`roots`](Self::roots) of the root at row position `p`, offset `j - i`.
    pub fn root_at(&self, p: usize, step: usize) -> Option<usize> {
        (step >= 1 && step <= self.exponents[p]).then(|| self.row_start[p] + step - 1)
    }

    pub fn index_of(&self, r: RootIndex) -> Option<usize> {
        let p = self.position(r.i)?;
        self.root_at(p, r.j.checked_sub(r.i)?)
    }

    /// The linear form α_{i,j}.
    pub fn root(&self, r: RootIndex) -> Result<&Polynomial> {
        self.index_of(r)
            .map(|k| &self.roots[k].form)
            .ok_or_else(|| Error::OutOfRange(format!("no root α{r} in {}", self.lie_type)))
    }

    /// α_{i,i+1} by row position.
    pub fn simple_root(&self, p: usize) -> &Polynomial {
        &self.roots[self.row_start[p]].form
    }

    pub fn simple_roots(&self) -> Vec<Polynomial> {
        (0..self.rank()).map(|p| self.simple_root(p).clone()).collect()
    }

    /// Ambient coordinates of the coweight α_i^*, by row position.
    pub fn coweight(&self, p: usize) -> &[Rational] {
        &self.coweights[p]
    }

    pub fn coweights(&self) -> &[Vec<Rational>] {
        &self.coweights
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Bitmask of roots covered by root `k`.
    pub fn lower_covers(&self, k: usize) -> u128 {
        self.lower_covers[k]
    }

    /// ht(Φ⁺), the height of the highest root.
    pub fn height(&self) -> usize {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn height_of(&self, r: RootIndex) -> Result<usize> {
        let k = self
            .index_of(r)
            .ok_or_else(|| Error::OutOfRange(format!("no root α{r} in {}", self.lie_type)))?;
        Ok(self.roots[k].height())
    }

    /// Row positions in Λ_m.
    pub fn lambda_positions(&self, m: usize) -> Result<Vec<usize>> {
        if m > self.height() {
            return Err(Error::OutOfRange(format!("m = {m} exceeds the height {}", self.height())));
        }
        Ok((0..self.rank()).filter(|&p| self.exponents[p] >= m).collect())
    }

    /// Λ_m = {i : h_m(i) - i = m}, as labels.
    pub fn lambda_set(&self, m: usize) -> Result<Vec<usize>> {
        Ok(self.lambda_positions(m)?.into_iter().map(|p| self.labels[p]).collect())
    }

    /// {i ↦ α_{i,i+m} : i ∈ Λ_m}.
    pub fn i_slice(&self, m: usize) -> Result<BTreeMap<usize, Polynomial>> {
        if m == 0 {
            return Err(Error::OutOfRange("i_slice needs m >= 1".into()));
        }
        Ok(self
            .lambda_positions(m)?
            .into_iter()
            .map(|p| (self.labels[p], self.roots[self.row_start[p] + m - 1].form.clone()))
            .collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let roots: Vec<serde_json::Value> = self
            .roots
            .iter()
            .map(|r| {
                serde_json::json!({
                    "i": r.index.i,
                    "j": r.index.j,
                    "form": r.form,
                    "coords": r.coords,
                    "height": r.height(),
                })
            })
            .collect();
        let covers: Vec<[RootIndex; 2]> = self
            .covers
            .iter()
            .map(|&(a, b)| [self.roots[a].index, self.roots[b].index])
            .collect();
        serde_json::json!({
            "type": self.lie_type,
            "labels": self.labels,
            "exponents": self.exponents,
            "quotient": QuotientJson::from(&self.quotient),
            "roots": roots,
            "covers": covers,
        })
    }
}

/// True when the root with these simple-root coordinates is a simple root.
pub fn is_simple(coords: &[i64]) -> bool {
    coords.iter().filter(|c| !c.is_zero()).count() == 1 && coords.iter().sum::<i64>() == 1
}
