//! Lower ideals of Φ⁺ and their Hessenberg functions.
//!
//! An ideal is a bitmask over [`RootSystem::roots`], whose order is
//! (row label, j). Hessenberg functions list h(i) in row order.

mod conditions;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootIndex, RootSystem};

pub use conditions::validate_hessenberg_conditions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LowerIdeal {
    mask: u128,
}

impl LowerIdeal {
    pub fn empty() -> LowerIdeal {
        LowerIdeal { mask: 0 }
    }

    /// Wrap a bitmask, checking downward closure.
    pub fn new(rs: &RootSystem, mask: u128) -> Result<LowerIdeal> {
        if mask & !rs.full_mask() != 0 {
            return Err(Error::OutOfRange("mask names roots outside Φ⁺".into()));
        }
        if let Some(k) = first_unclosed(rs, mask) {
            return Err(Error::NotDownwardClosed(format!(
                "α{} is in the set but a root below it is not",
                rs.roots()[k].index
            )));
        }
        Ok(LowerIdeal { mask })
    }

    pub fn from_members(rs: &RootSystem, members: &[RootIndex]) -> Result<LowerIdeal> {
        let mut mask = 0u128;
        for &r in members {
            let k = rs
                .index_of(r)
                .ok_or_else(|| Error::OutOfRange(format!("no root α{r} in {}", rs.lie_type())))?;
            mask |= 1u128 << k;
        }
        LowerIdeal::new(rs, mask)
    }

    /// All of Φ⁺.
    pub fn full(rs: &RootSystem) -> LowerIdeal {
        LowerIdeal { mask: rs.full_mask() }
    }

    /// I_m: the roots of height at most m.
    pub fn of_height(rs: &RootSystem, m: usize) -> LowerIdeal {
        let mask = rs
            .roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.height() <= m)
            .fold(0u128, |acc, (k, _)| acc | 1u128 << k);
        LowerIdeal { mask }
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, k: usize) -> bool {
        self.mask >> k & 1 == 1
    }

    /// Root indices (positions in [`RootSystem::roots`]) in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            out.push(k);
            m &= m - 1;
        }
        out
    }

    pub fn members(&self, rs: &RootSystem) -> Vec<RootIndex> {
        self.indices().into_iter().map(|k| rs.roots()[k].index).collect()
    }

    /// The maximal height of a member.
    pub fn height(&self, rs: &RootSystem) -> Result<usize> {
        self.indices()
            .into_iter()
            .map(|k| rs.roots()[k].height())
            .max()
            .ok_or(Error::HeightUndefined)
    }

    /// Roots that can be added while staying a lower ideal.
    pub fn addable(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.num_roots())
            .filter(|&k| !self.contains(k) && rs.lower_covers(k) & !self.mask == 0)
            .collect()
    }

    pub fn with(&self, rs: &RootSystem, k: usize) -> Result<LowerIdeal> {
        LowerIdeal::new(rs, self.mask | 1u128 << k)
    }
}

/// First root in `mask` with a lower cover outside `mask`.
fn first_unclosed(rs: &RootSystem, mask: u128) -> Option<usize> {
    (0..rs.num_roots()).find(|&k| mask >> k & 1 == 1 && rs.lower_covers(k) & !mask != 0)
}

pub fn is_downward_closed(rs: &RootSystem, mask: u128) -> bool {
    first_unclosed(rs, mask).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

impl HessenbergFunction {
    pub fn new(values: Vec<usize>) -> HessenbergFunction {
        HessenbergFunction { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// h(i) = i for every row.
    pub fn identity(rs: &RootSystem) -> HessenbergFunction {
        HessenbergFunction { values: rs.labels().to_vec() }
    }

    /// Parse "3,5,4,7".
    pub fn parse(s: &str) -> Result<HessenbergFunction> {
        let values = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad h value {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(HessenbergFunction { values })
    }

    /// Check i ≤ h(i) ≤ i + e_i for every row.
    pub fn check_bounds(&self, rs: &RootSystem) -> Result<()> {
        if self.values.len() != rs.rank() {
            return Err(Error::WrongLength { expected: rs.rank(), got: self.values.len() });
        }
        for (p, (&v, &l)) in self.values.iter().zip(rs.labels()).enumerate() {
            if v < l || v > l + rs.exponents()[p] {
                return Err(Error::InvalidHessenberg(format!(
                    "h({l}) = {v} is outside [{l}, {}]",
                    l + rs.exponents()[p]
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn hessenberg_from_ideal(rs: &RootSystem, ideal: &LowerIdeal) -> Result<HessenbergFunction> {
    if !is_downward_closed(rs, ideal.mask) {
        return Err(Error::NotDownwardClosed("input set".into()));
    }
    let values = (0..rs.rank())
        .map(|p| {
            let label = rs.labels()[p];
            (1..=rs.exponents()[p])
                .rev()
                .find(|&s| ideal.contains(rs.root_at(p, s).expect("in range")))
                .map_or(label, |s| label + s)
        })
        .collect();
    Ok(HessenbergFunction { values })
}

pub fn ideal_from_hessenberg(rs: &RootSystem, h: &HessenbergFunction) -> Result<LowerIdeal> {
    h.check_bounds(rs)?;
    let mut mask = 0u128;
    for (p, (&v, &l)) in h.values.iter().zip(rs.labels()).enumerate() {
        for s in 1..=v - l {
            mask |= 1u128 << rs.root_at(p, s).expect("in range");
        }
    }
    if !is_downward_closed(rs, mask) {
        return Err(Error::InvalidHessenberg(format!("{h} does not give a lower ideal")));
    }
    Ok(LowerIdeal { mask })
}

/// Every lower ideal, sorted by (|I|, member list).
///
/// Walks the lattice upward from the empty ideal, one addable root at a time.
pub fn enumerate_lower_ideals(rs: &RootSystem) -> Vec<LowerIdeal> {
    let mut seen: HashSet<u128> = HashSet::new();
    let mut layer = vec![0u128];
    seen.insert(0);
    let mut all = vec![LowerIdeal::empty()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &mask in &layer {
            let ideal = LowerIdeal { mask };
            for k in ideal.addable(rs) {
                let m = mask | 1u128 << k;
                if seen.insert(m) {
                    next.push(m);
                }
            }
        }
        next.sort_unstable_by_key(|&m| LowerIdeal { mask: m }.indices());
        all.extend(next.iter().map(|&mask| LowerIdeal { mask }));
        layer = next;
    }
    all
}

/// exp(A_I) = {h_I(i) - i}, in row order.
pub fn exponents_of(rs: &RootSystem, ideal: &LowerIdeal) -> Result<Vec<usize>> {
    let h = hessenberg_from_ideal(rs, ideal)?;
    Ok(h.values.iter().zip(rs.labels()).map(|(v, l)| v - l).collect())
}

/// The dual partition of the height distribution of I, padded to length n
/// and sorted decreasingly.
pub fn dual_partition(rs: &RootSystem, ideal: &LowerIdeal) -> Vec<usize> {
    let mut counts = vec![0usize; rs.height() + 1];
    for k in ideal.indices() {
        counts[rs.roots()[k].height()] += 1;
    }
    (1..=rs.rank())
        .map(|r| counts.iter().skip(1).filter(|&&c| c >= r).count())
        .collect()
}

/// Λ_I: rows whose exponent reaches ht(I). Labels, increasing.
pub fn lambda_of_ideal(rs: &RootSystem, ideal: &LowerIdeal) -> Result<Vec<usize>> {
    let ht = ideal.height(rs)?;
    let exps = exponents_of(rs, ideal)?;
    Ok(rs.labels().iter().zip(&exps).filter(|(_, &e)| e == ht).map(|(&l, _)| l).collect())
}
