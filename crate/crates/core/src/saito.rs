//! Certification of uniform bases with Saito's criterion.
//!
//! For a lower ideal I with Hessenberg function h the candidate basis is
//! (ψ_{1,h(1)}, …, ψ_{n,h(n)}). It passes when every ψ lies in D(A_I), the
//! degrees sum to |I|, and det M ≐ ∏_{α∈I} α, where M has entries
//! ψ_{i,h(i)}(α_k) over the simple roots α_k.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::UniformBasis;
use crate::error::{Error, Result};
use crate::exactmath::matrix::rational_det;
use crate::exactmath::sample::{random_point, random_point_on};
use crate::exactmath::{proportionality, rational, PolyMatrix, Polynomial, Rational};
use crate::ideals::{enumerate_lower_ideals, hessenberg_from_ideal, ideal_from_hessenberg, HessenbergFunction, LowerIdeal};
use crate::rootsys::{RootIndex, RootSystem};

/// Points used by the randomized determinant check.
pub const SAITO_POINTS: usize = 5;
/// Points per root for sampled membership above the symbolic budget.
pub const MEMBERSHIP_POINTS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SaitoMode {
    Exact,
    Randomized,
}

impl SaitoMode {
    /// Exact determinants up to rank 5 outside the E series.
    pub fn default_for(rs: &RootSystem) -> SaitoMode {
        if rs.rank() <= 5 && rs.lie_type().family != crate::rootsys::Family::E {
            SaitoMode::Exact
        } else {
            SaitoMode::Randomized
        }
    }
}

impl std::str::FromStr for SaitoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SaitoMode> {
        match s {
            "exact" => Ok(SaitoMode::Exact),
            "random" | "randomized" => Ok(SaitoMode::Randomized),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (expected exact or random)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub h: HessenbergFunction,
    pub ideal_size: usize,
    pub membership_ok: bool,
    pub degree_sum_ok: bool,
    pub saito_mode: SaitoMode,
    pub saito_ok: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub constant: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn ser_opt_rational<S: serde::Serializer>(c: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_some(&rational::to_canonical(c)),
        None => s.serialize_none(),
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.membership_ok && self.degree_sum_ok && self.saito_ok
    }
}

/// Which roots each basis entry is logarithmic along.
///
/// Entry (i, j) maps to the mask of roots α with ψ_{i,j}(α) ∈ α·𝓡.
/// Materialized entries are decided by exact division; the rest by
/// evaluating at random points of each hyperplane α = 0.
#[derive(Clone, Debug)]
pub struct MembershipTable {
    masks: BTreeMap<RootIndex, u128>,
    exact: bool,
}

impl MembershipTable {
    pub fn build(rs: &RootSystem, basis: &UniformBasis, seed: u64) -> Result<MembershipTable> {
        let indices = basis.indices();
        let mut masks: BTreeMap<RootIndex, u128> = BTreeMap::new();
        let symbolic: Vec<(RootIndex, u128)> = basis
            .derivs()
            .par_iter()
            .map(|(r, d)| {
                let mut mask = 0u128;
                for (k, root) in rs.roots().iter().enumerate() {
                    let v = d.apply_coeffs(&root.coeffs);
                    if v.restrict_to(&root.form).expect("nonzero root").is_zero() {
                        mask |= 1u128 << k;
                    }
                }
                (*r, mask)
            })
            .collect();
        masks.extend(symbolic);
        let missing: Vec<RootIndex> = indices.iter().filter(|r| !masks.contains_key(r)).copied().collect();
        let exact = missing.is_empty();
        if !exact {
            let per_root: Vec<Result<Vec<bool>>> = rs
                .roots()
                .par_iter()
                .enumerate()
                .map(|(k, root)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    let mut ok = vec![true; missing.len()];
                    for _ in 0..MEMBERSHIP_POINTS {
                        let pt = random_point_on(rs.quotient(), &root.form, &mut rng);
                        let vals = basis.evaluate_at(&pt)?;
                        for (t, r) in missing.iter().enumerate() {
                            let v: Rational = vals[r].iter().zip(&root.coeffs).map(|(a, b)| a * b).sum();
                            if !v.is_zero() {
                                ok[t] = false;
                            }
                        }
                    }
                    Ok(ok)
                })
                .collect();
            for r in &missing {
                masks.insert(*r, 0);
            }
            for (k, res) in per_root.into_iter().enumerate() {
                for (t, ok) in res?.into_iter().enumerate() {
                    if ok {
                        *masks.get_mut(&missing[t]).expect("inserted") |= 1u128 << k;
                    }
                }
            }
        }
        Ok(MembershipTable { masks, exact })
    }

    /// True when every entry was decided symbolically.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn mask(&self, r: RootIndex) -> u128 {
        self.masks.get(&r).copied().unwrap_or(0)
    }
}

/// A random point with the basis values there.
type Sample = (Vec<Rational>, BTreeMap<RootIndex, Vec<Rational>>);

/// Shared state for verifying many ideals against one basis.
pub struct Verifier<'a> {
    rs: &'a RootSystem,
    basis: &'a UniformBasis,
    table: MembershipTable,
    /// Basis values at the shared random points (randomized mode).
    samples: Vec<Sample>,
    mode: SaitoMode,
}

impl<'a> Verifier<'a> {
    pub fn new(rs: &'a RootSystem, basis: &'a UniformBasis, mode: SaitoMode, seed: u64) -> Result<Verifier<'a>> {
        if basis.lie_type() != rs.lie_type() {
            return Err(Error::InvalidType(format!("basis of {} used with {}", basis.lie_type(), rs.lie_type())));
        }
        let table = MembershipTable::build(rs, basis, seed)?;
        let mut samples = Vec::new();
        if mode == SaitoMode::Randomized {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // A few spare points in case ∏α vanishes at one of them.
            for _ in 0..SAITO_POINTS + 3 {
                let pt = random_point(rs.quotient(), &mut rng);
                let vals = basis.evaluate_at(&pt)?;
                samples.push((pt, vals));
            }
        }
        Ok(Verifier { rs, basis, table, samples, mode })
    }

    pub fn membership_table(&self) -> &MembershipTable {
        &self.table
    }

    pub fn verify(&self, h: &HessenbergFunction) -> Result<VerificationReport> {
        let start = Instant::now();
        let rs = self.rs;
        let ideal = ideal_from_hessenberg(rs, h)?;
        let entries: Vec<RootIndex> = rs.labels().iter().zip(h.values()).map(|(&l, &v)| RootIndex::new(l, v)).collect();

        let mut detail = None;
        let bad: Vec<String> = entries
            .iter()
            .filter(|r| ideal.mask() & !self.table.mask(**r) != 0)
            .map(|r| format!("ψ{r}"))
            .collect();
        let membership_ok = bad.is_empty();
        if !membership_ok {
            detail = Some(format!("not logarithmic: {}", bad.join(", ")));
        }

        let mut deg_sum = 0usize;
        for r in &entries {
            deg_sum += match self.basis.derivs().get(r) {
                Some(d) if !d.is_zero() => match d.degree() {
                    Ok(k) => k as usize,
                    Err(_) => usize::MAX / 4,
                },
                _ => r.j - r.i,
            };
        }
        let degree_sum_ok = deg_sum == ideal.len();

        let (saito_ok, constant) = match self.mode {
            SaitoMode::Exact => match self.exact_det(&entries, &ideal) {
                Ok(c) => (c.is_some(), c),
                Err(e) => {
                    detail.get_or_insert(e.to_string());
                    (false, None)
                }
            },
            SaitoMode::Randomized => {
                let c = self.random_det(&entries, &ideal)?;
                (c.is_some(), c)
            }
        };
        if !saito_ok && detail.is_none() {
            detail = Some("det M is not a nonzero multiple of the product of the ideal's roots".into());
        }
        Ok(VerificationReport {
            h: h.clone(),
            ideal_size: ideal.len(),
            membership_ok,
            degree_sum_ok,
            saito_mode: self.mode,
            saito_ok,
            constant,
            detail,
            elapsed: start.elapsed(),
        })
    }

    fn exact_det(&self, entries: &[RootIndex], ideal: &LowerIdeal) -> Result<Option<Rational>> {
        let rs = self.rs;
        let simple = rs.simple_roots();
        let mut cells = Vec::with_capacity(entries.len() * simple.len());
        for r in entries {
            let d = self.basis.get(*r)?;
            for a in &simple {
                cells.push(d.apply(a));
            }
        }
        let det = PolyMatrix::new(entries.len(), simple.len(), cells)?.determinant()?;
        let prod = ideal
            .indices()
            .into_iter()
            .fold(Polynomial::one(rs.ambient_dim()), |acc, k| acc.mul(&rs.roots()[k].form));
        Ok(proportionality(&det, &prod).filter(|c| !c.is_zero()))
    }

    fn random_det(&self, entries: &[RootIndex], ideal: &LowerIdeal) -> Result<Option<Rational>> {
        let rs = self.rs;
        let simple: Vec<&Vec<Rational>> = (0..rs.rank())
            .map(|p| &rs.roots()[rs.root_at(p, 1).expect("simple root")].coeffs)
            .collect();
        let mut constant: Option<Rational> = None;
        let mut used = 0;
        for (pt, vals) in &self.samples {
            let mut prod = Rational::from_integer(1.into());
            for k in ideal.indices() {
                prod *= rs.roots()[k].form.evaluate(pt)?;
            }
            if prod.is_zero() {
                continue;
            }
            let m: Vec<Vec<Rational>> = entries
                .iter()
                .map(|r| simple.iter().map(|a| vals[r].iter().zip(a.iter()).map(|(x, y)| x * y).sum()).collect())
                .collect();
            let c = rational_det(&m) / prod;
            if c.is_zero() {
                return Ok(None);
            }
            match &constant {
                Some(prev) if *prev != c => return Ok(None),
                _ => constant = Some(c),
            }
            used += 1;
            if used == SAITO_POINTS {
                return Ok(constant);
            }
        }
        Err(Error::Guardrail("the product of roots vanished at too many sample points".into()))
    }
}

/// Verify one ideal.
pub fn verify_ideal(
    rs: &RootSystem,
    basis: &UniformBasis,
    h: &HessenbergFunction,
    mode: SaitoMode,
    seed: u64,
) -> Result<VerificationReport> {
    Verifier::new(rs, basis, mode, seed)?.verify(h)
}

/// Thread count from `IDEALARR_THREADS`, if set.
pub fn thread_cap() -> Option<usize> {
    std::env::var("IDEALARR_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0)
}

/// Run `f` on a pool sized by [`thread_cap`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}

/// Verify a list of ideals in parallel; reports come back sorted by h.
pub fn verify_ideals(
    rs: &RootSystem,
    basis: &UniformBasis,
    ideals: &[LowerIdeal],
    mode: SaitoMode,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    with_pool(|| {
        let v = Verifier::new(rs, basis, mode, seed)?;
        let mut hs: Vec<HessenbergFunction> =
            ideals.iter().map(|i| hessenberg_from_ideal(rs, i)).collect::<Result<_>>()?;
        hs.sort();
        hs.dedup();
        hs.par_iter().map(|h| v.verify(h)).collect()
    })
}

/// Every lower ideal, or a seeded uniform sample of `sample` of them.
pub fn select_ideals(rs: &RootSystem, sample_size: Option<usize>, seed: u64) -> Vec<LowerIdeal> {
    let all = enumerate_lower_ideals(rs);
    match sample_size {
        Some(k) if k < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<usize> = sample(&mut rng, all.len(), k).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| all[i]).collect()
        }
        _ => all,
    }
}

/// Exhaustive sweep, or a seeded sample when `sample_size` is given.
pub fn verify_type(
    rs: &RootSystem,
    basis: &UniformBasis,
    mode: SaitoMode,
    sample_size: Option<usize>,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    verify_ideals(rs, basis, &select_ideals(rs, sample_size, seed), mode, seed)
}

/// The ideals I_m and I_m ∪ {α_{j,j+m+1}} used by the recursion conditions.
pub fn chain_ideals(rs: &RootSystem) -> Vec<LowerIdeal> {
    let mut out = Vec::new();
    for m in 0..=rs.height() {
        let im = LowerIdeal::of_height(rs, m);
        out.push(im);
        if m < rs.height() {
            for j in rs.lambda_set(m + 1).expect("m + 1 within height") {
                let k = rs.index_of(RootIndex::new(j, j + m + 1)).expect("root exists");
                out.push(im.with(rs, k).expect("adding a minimal root keeps the ideal lower"));
            }
        }
    }
    out
}
