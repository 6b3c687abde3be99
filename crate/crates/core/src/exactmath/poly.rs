use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::monomial::{Monomial, MAX_VARS};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in a fixed number of variables.
///
/// Terms are kept sorted by descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

fn sort_and_combine(mut v: Vec<(Monomial, Rational)>) -> Vec<(Monomial, Rational)> {
    v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += c,
            _ => {
                if let Some(last) = out.last() {
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if matches!(out.last(), Some(last) if last.1.is_zero()) {
        out.pop();
    }
    out
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(nvars, Rational::one())
    }

    /// The variable x_{k+1}.
    pub fn var(nvars: usize, k: usize) -> Polynomial {
        assert!(k < nvars);
        let mut p = Polynomial::zero(nvars);
        p.terms.push((Monomial::var(k), Rational::one()));
        p
    }

    /// Linear form sum_k coeffs[k] x_{k+1}.
    pub fn linear(coeffs: &[Rational]) -> Polynomial {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::var(k), c.clone()))
            .collect();
        Polynomial::from_terms(coeffs.len(), terms)
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Polynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Polynomial { nvars, terms: sort_and_combine(terms) }
    }

    pub fn from_exponent_terms(nvars: usize, terms: &[(Vec<u32>, Rational)]) -> Result<Polynomial> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::WrongLength { expected: nvars, got: e.len() });
            }
            let m = Monomial::from_exponents(e)
                .ok_or_else(|| Error::Parse("exponent out of range".into()))?;
            out.push((m, c.clone()));
        }
        Ok(Polynomial::from_terms(nvars, out))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Constant term (zero when absent).
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Coefficient vector of a homogeneous linear form (or zero).
    pub fn linear_coeffs(&self) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.nvars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let k = m.max_var()?;
            out[k] = c.clone();
        }
        Some(out)
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by c * m. Monomial multiplication preserves the order.
    pub fn mul_term(&self, m: Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.check_compatible(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(*m, c);
        }
        if small.len() * big.len() <= 4096 || small.len() <= 12 {
            let mut v = Vec::with_capacity(small.len() * big.len());
            for (ma, ca) in &small.terms {
                for (mb, cb) in &big.terms {
                    v.push((ma.mul(*mb), ca * cb));
                }
            }
            return Polynomial { nvars: self.nvars, terms: sort_and_combine(v) };
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(big.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(*mb))
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
        }
        let v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms: sort_and_combine(v) }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn product<'a>(nvars: usize, factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        let mut out = Polynomial::one(nvars);
        for f in factors {
            out = out.mul(f);
        }
        out
    }

    /// Exact evaluation at a point of length `nvars`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::WrongLength { expected: self.nvars, got: point.len() });
        }
        // Cache powers per variable to avoid repeated exponentiation.
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(k) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &pw[1];
                    pw.push(next);
                }
                t *= &pw[e];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Split `self = sum_k p_k x_v^k` with `p_k` free of x_v.
    fn split_by_var(&self, v: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = Vec::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            let e = e as usize;
            if buckets.len() <= e {
                buckets.resize_with(e + 1, Vec::new);
            }
            buckets[e].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_terms(self.nvars, t))
            .collect()
    }

    /// Division with remainder by a homogeneous linear form `l`.
    ///
    /// With v the largest-index variable of `l`, returns `(q, r)` where
    /// `self = l*q + r` and `r` does not involve x_v. The remainder is the
    /// restriction of `self` to the hyperplane `l = 0`, written in the
    /// remaining variables.
    pub fn div_rem_linear(&self, l: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_compatible(l);
        let lc = l.linear_coeffs().ok_or(Error::DegenerateDivisor)?;
        let v = (0..self.nvars).rev().find(|&k| !lc[k].is_zero()).ok_or(Error::DegenerateDivisor)?;
        let c = lc[v].clone();
        // x_v = s modulo l, with s = -(l - c x_v)/c.
        let mut s_coeffs: Vec<Rational> = lc.iter().map(|a| -(a / &c)).collect();
        s_coeffs[v] = Rational::zero();
        let s = Polynomial::linear(&s_coeffs);

        let parts = self.split_by_var(v);
        if parts.len() <= 1 {
            let r = parts.into_iter().next().unwrap_or_else(|| Polynomial::zero(self.nvars));
            return Ok((Polynomial::zero(self.nvars), r));
        }
        let d = parts.len() - 1;
        // Synthetic division by (x_v - s).
        let mut b: Vec<Polynomial> = vec![Polynomial::zero(self.nvars); d];
        b[d - 1] = parts[d].clone();
        for k in (1..d).rev() {
            b[k - 1] = parts[k].add(&s.mul(&b[k]));
        }
        let rem = parts[0].add(&s.mul(&b[0]));
        let inv_c = Rational::one() / &c;
        let mut q_terms = Vec::new();
        for (k, bk) in b.iter().enumerate() {
            let shift = Monomial::from_exponents(&{
                let mut e = vec![0u32; self.nvars];
                e[v] = k as u32;
                e
            })
            .expect("exponent in range");
            for (m, a) in bk.terms() {
                q_terms.push((m.mul(shift), a * &inv_c));
            }
        }
        Ok((Polynomial::from_terms(self.nvars, q_terms), rem))
    }

    /// Exact quotient by a linear form, or `None` when `l` does not divide `self`.
    pub fn divide_by_linear(&self, l: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem_linear(l)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Restriction to the hyperplane `l = 0` (the remainder of `div_rem_linear`).
    pub fn restrict_to(&self, l: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem_linear(l)?.1)
    }

    /// Exact multivariate quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check_compatible(d);
        let (lm, lc) = d.leading()?.clone();
        if self.is_zero() {
            return Some(Polynomial::zero(self.nvars));
        }
        if d.len() == 1 {
            let inv = Rational::one() / &lc;
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.div(lm)?, c * &inv));
            }
            return Some(Polynomial { nvars: self.nvars, terms: out });
        }
        let inv = Rational::one() / &lc;
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let tm = m.div(lm)?;
            let tc = &c * &inv;
            for (dm, dc) in d.terms.iter().skip(1) {
                let key = dm.mul(tm);
                let delta = dc * &tc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            q.push((tm, tc));
        }
        Some(Polynomial { nvars: self.nvars, terms: q })
    }

    /// Substitute x_{k+1} -> images[k] for every variable.
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let n = self.nvars;
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(n), p.clone()]).collect();
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(n, c.clone());
            for (k, pw) in cache.iter_mut().enumerate() {
                let e = m.exponent(k) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            acc.extend(t.terms);
        }
        Polynomial::from_terms(n, acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value, nvars: usize) -> Result<Polynomial> {
        let arr = value.as_array().ok_or_else(|| Error::Parse("polynomial must be an array".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let e = t
                .get("e")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Parse("term needs an \"e\" array".into()))?;
            let e: Vec<u32> = e
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| Error::Parse("bad exponent".into())))
                .collect::<Result<_>>()?;
            let c = t
                .get("c")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("term needs a \"c\" string".into()))?;
            terms.push((e, rational::parse(c)?));
        }
        Polynomial::from_exponent_terms(nvars, &terms)
    }
}

/// Returns c with p = c*q (c nonzero), or `None`. Two zero polynomials give 1.
pub fn proportionality(p: &Polynomial, q: &Polynomial) -> Option<Rational> {
    if p.is_zero() && q.is_zero() {
        return Some(Rational::one());
    }
    if p.len() != q.len() || p.is_zero() || q.is_zero() {
        return None;
    }
    let c = &p.terms[0].1 / &q.terms[0].1;
    for ((ma, ca), (mb, cb)) in p.terms.iter().zip(&q.terms) {
        if ma != mb || *ca != &c * cb {
            return None;
        }
    }
    Some(c)
}

struct TermJson<'a>(&'a Monomial, &'a Rational, usize);

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("e", &self.0.exponents(self.2))?;
        map.serialize_entry("c", &rational::to_canonical(self.1))?;
        map.end()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson(m, c, self.nvars))?;
        }
        seq.end()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", rational::display(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::display(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
