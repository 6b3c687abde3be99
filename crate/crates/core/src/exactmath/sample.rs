use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::poly::Polynomial;
use super::quotient::QuotientSpec;
use super::rational::Rational;

/// Bound on the integer coordinates of random points.
pub const POINT_BOUND: i64 = 1_000_000;

fn draw<R: Rng>(rng: &mut R) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-POINT_BOUND..=POINT_BOUND)))
}

/// Uniform integer point on the free variables, completed to a point of 𝔱.
pub fn random_point<R: Rng>(q: &QuotientSpec, rng: &mut R) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); q.ambient_dim()];
    for k in q.free_vars() {
        p[k] = draw(rng);
    }
    q.complete_point(&mut p);
    p
}

/// Random point of 𝔱 on the hyperplane `l = 0` (`l` in normal form).
pub fn random_point_on<R: Rng>(q: &QuotientSpec, l: &Polynomial, rng: &mut R) -> Vec<Rational> {
    let c = l.linear_coeffs().expect("hyperplane given by a linear form");
    let v = (0..c.len()).rev().find(|&k| !c[k].is_zero()).expect("nonzero linear form");
    let mut p = vec![Rational::zero(); q.ambient_dim()];
    for k in q.free_vars() {
        if k != v {
            p[k] = draw(rng);
        }
    }
    let rest: Rational = (0..c.len()).filter(|&k| k != v).map(|k| &c[k] * &p[k]).sum();
    p[v] = -rest / &c[v];
    q.complete_point(&mut p);
    p
}
