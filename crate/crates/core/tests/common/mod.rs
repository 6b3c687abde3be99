//! Shared test helpers: a small polynomial expression parser and derivation
//! builders.
#![allow(dead_code)]

use idealarr::derivation::Derivation;
use idealarr::exactmath::rational::{self, Rational};
use idealarr::exactmath::{Polynomial, QuotientSpec};
use idealarr::rootsys::RootIndex;

/// Parse expressions like `(x1-x2)*(x1+x4) - 2*x2^2*x3 + 1/2*x4`.
pub fn poly(n: usize, s: &str) -> Polynomial {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { toks, pos: 0, n };
    let out = p.sum();
    assert_eq!(p.pos, p.toks.len(), "trailing input in {s:?}");
    out
}

struct Parser {
    toks: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn sum(&mut self) -> Polynomial {
        let mut acc = Polynomial::zero(self.n);
        let mut sign = 1;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let t = self.product();
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return acc,
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Polynomial {
        let mut acc = self.power();
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power());
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.number();
                    acc = acc.scale(&(Rational::from_integer(1.into()) / d));
                }
                _ => return acc,
            }
        }
    }

    fn power(&mut self) -> Polynomial {
        let base = self.atom();
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number();
            return base.pow(e.to_integer().try_into().unwrap());
        }
        base
    }

    fn number(&mut self) -> Rational {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        rational::parse(&s).unwrap()
    }

    fn atom(&mut self) -> Polynomial {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let s = self.sum();
                assert_eq!(self.peek(), Some(')'));
                self.pos += 1;
                s
            }
            Some('x') => {
                self.pos += 1;
                let k = self.number().to_integer();
                let k: usize = k.try_into().unwrap();
                Polynomial::var(self.n, k - 1)
            }
            Some(c) if c.is_ascii_digit() => Polynomial::constant(self.n, self.number()),
            other => panic!("unexpected {other:?} at {}", self.pos),
        }
    }
}

/// Σ f_k ∂_k from coefficient strings (divisions by x_k written as `/xk`
/// are not supported; use [`over`]).
pub fn der(q: &QuotientSpec, coeffs: &[&str]) -> Derivation {
    let n = q.ambient_dim();
    Derivation::new(coeffs.iter().map(|s| poly(n, s)).collect(), q).unwrap()
}

/// Exact quotient of an expression by x_k.
pub fn over(n: usize, s: &str, k: usize) -> Polynomial {
    poly(n, s).div_exact(&Polynomial::var(n, k - 1)).expect("divisible")
}

pub fn q(s: &str) -> Rational {
    rational::parse(s).unwrap()
}

/// The reference D4 derivation listing, ψ_{i,j} for all 16 entries.
pub fn d4_listing(qs: &QuotientSpec) -> Vec<(RootIndex, Derivation)> {
    let ri = RootIndex::new;
    let d = |c: Vec<Polynomial>| Derivation::new(c, qs).unwrap();
    let p = |s: &str| poly(4, s);
    let o = |s: &str| over(4, s, 1);
    let o2 = |s: &str| over(4, s, 2);
    vec![
        (ri(1, 1), der(qs, &["1", "0", "0", "0"])),
        (ri(1, 2), der(qs, &["x1-x2", "0", "0", "0"])),
        (
            ri(1, 3),
            d(vec![o("(x1-x2)*(x1-x3)*(x1+x4) - x2*x3*x4"), p("-x3*x4"), p("-x2*x4"), p("-x2*x3")]),
        ),
        (
            ri(1, 4),
            d(vec![o("(x1-x2)*(x1-x3)*(x1-x4)*(x1+x4) + x2*x3*x4^2"), p("x3*x4^2"), p("x2*x4^2"), p("x2*x3*x4")]),
        ),
        (
            ri(1, 5),
            d(vec![
                o("(x1-x2)*(x1-x3)*(x1-x4)*(x1+x4)*(x1+x3) + x2*x3^2*x4^2"),
                p("x3^2*x4^2"),
                p("x2*x3*x4^2"),
                p("x2*x3^2*x4"),
            ]),
        ),
        (
            ri(1, 6),
            d(vec![
                o("(x1-x2)*(x1-x3)*(x1-x4)*(x1+x4)*(x1+x3)*(x1+x2) + x2^2*x3^2*x4^2"),
                p("x2*x3^2*x4^2"),
                p("x2^2*x3*x4^2"),
                p("x2^2*x3^2*x4"),
            ]),
        ),
        (ri(2, 2), der(qs, &["1", "1", "0", "0"])),
        (
            ri(2, 3),
            d(vec![o("(x1-x3)*(x1+x4) + x3*x4"), o2("(x2-x3)*(x2+x4) + x3*x4"), p("x4"), p("x3")]),
        ),
        (
            ri(2, 4),
            d(vec![
                o("(x1-x3)*(x1-x4)*(x1+x4) - x3*x4^2"),
                o2("(x2-x3)*(x2-x4)*(x2+x4) - x3*x4^2"),
                p("-x4^2"),
                p("-x3*x4"),
            ]),
        ),
        (
            ri(2, 5),
            d(vec![
                o("(x1-x3)*(x1-x4)*(x1+x4)*(x1+x3) - x3^2*x4^2"),
                o2("(x2-x3)*(x2-x4)*(x2+x4)*(x2+x3) - x3^2*x4^2"),
                p("-x3*x4^2"),
                p("-x3^2*x4"),
            ]),
        ),
        (ri(3, 3), der(qs, &["1", "1", "1", "-1"])),
        (ri(3, 4), der(qs, &["x1", "x2", "x3", "x4"])),
        (ri(4, 4), der(qs, &["1", "1", "1", "1"])),
        (
            ri(4, 5),
            d(vec![o("-(x1-x3)*(x1-x4) + x3*x4"), o2("-(x2-x3)*(x2-x4) + x3*x4"), p("x4"), p("x3")]),
        ),
        (
            ri(4, 6),
            d(vec![o("(x1-x2)*(x1-x3)*(x1-x4) + x2*x3*x4"), p("x3*x4"), p("x2*x4"), p("x2*x3")]),
        ),
        (ri(4, 7), der(qs, &["x2*x3*x4", "x1*x3*x4", "x1*x2*x4", "x1*x2*x3"])),
    ]
}
