//! Polynomial derivations θ = Σ f_k ∂_k in ambient coordinates.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, QuotientSpec, Rational};
use crate::ideals::LowerIdeal;
use crate::rootsys::RootSystem;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    /// Normalize the coefficients and check tangency to 𝔱.
    pub fn new(coeffs: Vec<Polynomial>, q: &QuotientSpec) -> Result<Derivation> {
        if coeffs.len() != q.ambient_dim() {
            return Err(Error::WrongLength { expected: q.ambient_dim(), got: coeffs.len() });
        }
        let coeffs: Vec<Polynomial> = coeffs.iter().map(|f| q.normalize(f)).collect();
        let d = Derivation { coeffs };
        for r in q.relations() {
            if !d.apply_coeffs(r).is_zero() {
                return Err(Error::NotTangent);
            }
        }
        Ok(d)
    }

    pub fn zero(nvars: usize) -> Derivation {
        Derivation { coeffs: vec![Polynomial::zero(nvars); nvars] }
    }

    /// The constant derivation Σ v_k ∂_k.
    pub fn constant(v: &[Rational], q: &QuotientSpec) -> Result<Derivation> {
        let n = v.len();
        Derivation::new(v.iter().map(|c| Polynomial::constant(n, c.clone())).collect(), q)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// θ(ℓ) for a linear form ℓ; constant terms of ℓ are ignored.
    pub fn apply(&self, l: &Polynomial) -> Polynomial {
        let c = l
            .terms()
            .iter()
            .filter(|(m, _)| !m.is_one())
            .map(|(m, c)| {
                assert_eq!(m.degree(), 1, "derivations are applied to linear forms");
                (m.max_var().expect("degree one"), c.clone())
            });
        let mut out = Polynomial::zero(self.nvars());
        for (k, a) in c {
            out = out.add(&self.coeffs[k].scale(&a));
        }
        out
    }

    /// θ applied to the linear form with ambient coefficients `c`.
    pub fn apply_coeffs(&self, c: &[Rational]) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars());
        for (f, a) in self.coeffs.iter().zip(c) {
            if !a.is_zero() {
                out = out.add(&f.scale(a));
            }
        }
        out
    }

    /// The common degree of the nonzero coefficients.
    pub fn degree(&self) -> Result<u32> {
        let mut d = None;
        for f in self.coeffs.iter().filter(|f| !f.is_zero()) {
            let fd = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
            match d {
                None => d = Some(fd),
                Some(x) if x != fd => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        d.ok_or(Error::NonHomogeneous)
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// f·θ for a polynomial f in normal form.
    pub fn mul_poly(&self, f: &Polynomial) -> Derivation {
        Derivation { coeffs: self.coeffs.iter().map(|a| a.mul(f)).collect() }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|f| f.evaluate(point)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("derivation serializes")
    }

    pub fn from_json(value: &serde_json::Value, q: &QuotientSpec) -> Result<Derivation> {
        let arr = value
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("derivation needs a \"coeffs\" array".into()))?;
        let coeffs = arr
            .iter()
            .map(|v| Polynomial::from_json(v, q.ambient_dim()))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(coeffs, q)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})∂{}", k + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[{self}]")
    }
}

/// θ ∈ D(A_I): θ(α) is divisible by α for every α ∈ I.
pub fn in_log_module(theta: &Derivation, rs: &RootSystem, ideal: &LowerIdeal) -> bool {
    ideal.indices().into_iter().all(|k| {
        let root = &rs.roots()[k];
        let v = theta.apply_coeffs(&root.coeffs);
        v.restrict_to(&root.form).expect("roots are nonzero linear forms").is_zero()
    })
}

/// The coweight α_i^* as a constant derivation; `label` is the row label.
pub fn dual_basis(rs: &RootSystem, label: usize) -> Result<Derivation> {
    let p = rs
        .position(label)
        .ok_or_else(|| Error::OutOfRange(format!("no row {label} in {}", rs.lie_type())))?;
    Derivation::constant(rs.coweight(p), rs.quotient())
}
