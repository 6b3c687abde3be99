use std::fmt;

/// Largest ambient dimension a packed monomial can address.
pub const MAX_VARS: usize = 15;

/// Largest exponent (and total degree) a packed monomial can hold.
pub const MAX_DEGREE: u32 = 255;

/// A monomial x_1^{e_1}...x_N^{e_N} packed into a `u128`.
///
/// The top byte holds the total degree, then one byte per variable starting
/// with x_1. Comparing the packed integers therefore compares by total degree
/// first and then lexicographically on (e_1, e_2, ...), which is graded lex.
/// Multiplication is plain integer addition as long as no byte overflows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

const DEG_SHIFT: u32 = 120;

#[inline]
fn shift(k: usize) -> u32 {
    debug_assert!(k < MAX_VARS);
    8 * (14 - k as u32)
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The variable x_{k+1} (zero-based index `k`).
    pub fn var(k: usize) -> Monomial {
        assert!(k < MAX_VARS, "variable index {k} exceeds {MAX_VARS}");
        Monomial((1u128 << DEG_SHIFT) | (1u128 << shift(k)))
    }

    pub fn from_exponents(exps: &[u32]) -> Option<Monomial> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut raw = 0u128;
        let mut deg = 0u32;
        for (k, &e) in exps.iter().enumerate() {
            if e > MAX_DEGREE {
                return None;
            }
            deg += e;
            raw |= (e as u128) << shift(k);
        }
        if deg > MAX_DEGREE {
            return None;
        }
        Some(Monomial(raw | ((deg as u128) << DEG_SHIFT)))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    #[inline]
    pub fn exponent(self, k: usize) -> u32 {
        ((self.0 >> shift(k)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|k| self.exponent(k)).collect()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product of two monomials. Panics if the total degree would exceed 255.
    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        assert!(
            self.degree() + other.degree() <= MAX_DEGREE,
            "monomial degree overflow"
        );
        Monomial(self.0 + other.0)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        if other.degree() > self.degree() {
            return None;
        }
        for k in 0..MAX_VARS {
            if other.exponent(k) > self.exponent(k) {
                return None;
            }
        }
        Some(Monomial(self.0 - other.0))
    }

    /// The monomial with the exponent of x_{k+1} set to zero, plus that exponent.
    pub fn split_var(self, k: usize) -> (Monomial, u32) {
        let e = self.exponent(k);
        let raw = self.0 - ((e as u128) << shift(k)) - ((e as u128) << DEG_SHIFT);
        (Monomial(raw), e)
    }

    /// Index of the largest variable present, if any.
    pub fn max_var(self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&k| self.exponent(k) > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for k in 0..MAX_VARS {
            let e = self.exponent(k);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}
