//! Checking ψ'_{i,j}(ᾱ_k) = \overline{ψ_{i,j}(α_k)} for a restricted basis.
//!
//! Overlines are restriction to 𝔱', i.e. normal forms in the subsystem's
//! quotient. Only the simple roots α_k with k ∈ S are compared.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::sample::random_point;
use crate::exactmath::Rational;
use crate::rootsys::{RootIndex, RootSystem};

use super::{BasisSource, UniformBasis};

#[derive(Clone, Debug, Default, Serialize)]
pub struct RestrictionCheck {
    /// (i, j, k) triples compared as polynomials.
    pub symbolic: usize,
    /// (i, j, k) triples compared at sample points, counted once per point.
    pub sampled: usize,
    pub mismatches: Vec<(RootIndex, usize)>,
}

impl RestrictionCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.symbolic + self.sampled > 0
    }
}

/// Compare a restricted basis with its parent on every grid entry.
///
/// Entries materialized in both bases are compared exactly; the rest are
/// compared at `points` random rational points of 𝔱'.
pub fn restriction_identity(
    parent_rs: &RootSystem,
    parent: &UniformBasis,
    sub: &UniformBasis,
    points: usize,
    seed: u64,
) -> Result<RestrictionCheck> {
    let subset = match sub.source() {
        BasisSource::Restriction { parent: t, subset, .. } if *t == parent_rs.lie_type() => subset.clone(),
        _ => return Err(Error::UnsupportedRestriction(format!("{} is not a restriction of {}", sub.lie_type(), parent_rs.lie_type()))),
    };
    if parent.lie_type() != parent_rs.lie_type() {
        return Err(Error::InvalidType(format!("parent basis is {}", parent.lie_type())));
    }
    let q = sub.quotient();
    let simple: Vec<(usize, &[Rational])> = subset
        .iter()
        .map(|&k| {
            let p = parent_rs.position(k).expect("subset labels come from the parent");
            (k, parent_rs.roots()[parent_rs.root_at(p, 1).expect("simple")].coeffs.as_slice())
        })
        .collect();

    let mut out = RestrictionCheck::default();
    let mut done = BTreeSet::new();
    for (r, d) in sub.grid() {
        let Some(pd) = parent.grid().get(r) else { continue };
        for &(k, a) in &simple {
            let lhs = q.normalize(&d.apply_coeffs(a));
            let rhs = q.normalize(&pd.apply_coeffs(a));
            if lhs != rhs {
                out.mismatches.push((*r, k));
            }
            out.symbolic += 1;
        }
        done.insert(*r);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let pt = random_point(q, &mut rng);
        let lhs = sub.evaluate_grid_at(&pt)?;
        let rhs = parent.evaluate_grid_at(&pt)?;
        for (r, v) in &lhs {
            if done.contains(r) {
                continue;
            }
            let w = rhs.get(r).ok_or_else(|| Error::OutOfRange(format!("ψ{r} is missing from the parent grid")))?;
            for &(k, a) in &simple {
                let x: Rational = v.iter().zip(a).map(|(s, t)| s * t).sum();
                let y: Rational = w.iter().zip(a).map(|(s, t)| s * t).sum();
                if x != y && !out.mismatches.contains(&(*r, k)) {
                    out.mismatches.push((*r, k));
                }
                out.sampled += 1;
            }
        }
    }
    Ok(out)
}
