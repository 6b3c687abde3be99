mod common;

use std::collections::BTreeMap;

use num_traits::Zero;

use common::{d4_listing, der, q};
use idealarr::bases::{
    build_from_matrices, build_with_budget, closed_form, paper_matrices, psi_tilde_d, psi_zero_d, restrict_basis,
    restriction_identity, xi_d, BasisSource, MatrixFamily,
};
use idealarr::derivation::{dual_basis, in_log_module, Derivation};
use idealarr::exactmath::matrix::rational_det;
use idealarr::exactmath::rational::{self, Rational};
use idealarr::exactmath::Polynomial;
use idealarr::ideals::{ideal_from_hessenberg, HessenbergFunction, LowerIdeal};
use idealarr::rootsys::{RootIndex, RootSystem};

fn rs(t: &str) -> RootSystem {
    RootSystem::build(t.parse().unwrap()).unwrap()
}

fn ri(i: usize, j: usize) -> RootIndex {
    RootIndex::new(i, j)
}

#[test]
fn d4_listing_matches_closed_form() {
    let r = rs("D4");
    let b = closed_form(&r).unwrap();
    let expected = d4_listing(r.quotient());
    assert_eq!(expected.len(), 16);
    assert_eq!(b.derivs().len(), 16);
    for (r, e) in expected {
        assert_eq!(b.get(r).unwrap(), &e, "ψ{r}");
    }
}

fn xs(n: usize, k: usize) -> Polynomial {
    Polynomial::var(n, k - 1)
}

fn prod(n: usize, it: impl Iterator<Item = Polynomial>) -> Polynomial {
    it.fold(Polynomial::one(n), |a, f| a.mul(&f))
}

fn sgn(e: usize) -> Rational {
    if e % 2 == 0 {
        rational::one()
    } else {
        -rational::one()
    }
}

/// x_{from}⋯x_{to} without x_skip.
fn xprod(n: usize, from: usize, to: usize, skip: usize) -> Polynomial {
    prod(n, (from..=to).filter(|&l| l != skip).map(|l| xs(n, l)))
}

/// Independent transcription of the explicit type D formulas.
fn d_explicit(n: usize, i: usize, j: usize) -> Vec<Polynomial> {
    let x = |k| xs(n, k);
    let minus = |k: usize, from: usize, to: usize| prod(n, (from..=to).map(|l| x(k).sub(&x(l))));
    let mut c = vec![Polynomial::zero(n); n];
    if i == n {
        let r = 2 * n - 1 - j;
        for k in 1..=n {
            c[k - 1] = if k <= r {
                minus(k, r + 1, n)
                    .scale(&sgn(n - r + 1))
                    .add(&xprod(n, r + 1, n, 0))
                    .div_exact(&x(k))
                    .unwrap()
            } else {
                xprod(n, r + 1, n, k)
            };
        }
    } else if j + 2 <= n {
        for k in 1..=i {
            c[k - 1] = minus(k, i + 1, j);
        }
    } else if j == n - 1 {
        let s = sgn(n - i);
        for k in 1..=n {
            c[k - 1] = if k <= i {
                minus(k, i + 1, n - 1)
                    .mul(&x(k).add(&x(n)))
                    .add(&xprod(n, i + 1, n, 0).scale(&s))
                    .div_exact(&x(k))
                    .unwrap()
            } else {
                xprod(n, i + 1, n, k).scale(&s)
            };
        }
    } else {
        let jj = j - n;
        let s = sgn(n - i + 1);
        let squares = prod(n, (n - jj..=n).map(|l| x(l).pow(2)));
        let tail = xprod(n, i + 1, n - 1 - jj, 0).mul(&squares).scale(&s);
        for k in 1..=n {
            c[k - 1] = if k <= i {
                minus(k, i + 1, n)
                    .mul(&prod(n, (n - jj..=n).rev().map(|l| x(k).add(&x(l)))))
                    .add(&tail)
                    .div_exact(&x(k))
                    .unwrap()
            } else {
                xprod(n, n - jj, n, 0).mul(&xprod(n, i + 1, n, k)).scale(&s)
            };
        }
    }
    c
}

#[test]
fn type_d_recursion_matches_explicit_formulas() {
    for n in 4..=6 {
        let r = rs(&format!("D{n}"));
        let b = closed_form(&r).unwrap();
        for (idx, d) in b.derivs() {
            let e = Derivation::new(d_explicit(n, idx.i, idx.j), r.quotient()).unwrap();
            assert_eq!(d, &e, "D{n} ψ{idx}");
            assert_eq!(d.degree().unwrap() as usize, idx.j - idx.i);
        }
    }
}

#[test]
fn type_d_auxiliaries() {
    let r = rs("D4");
    assert!(psi_zero_d(&r, 1).unwrap().is_zero());
    assert!(psi_zero_d(&r, 2).unwrap().is_zero());
    assert_eq!(psi_zero_d(&r, 3).unwrap(), der(r.quotient(), &["x2*x3*x4", "x1*x3*x4", "x1*x2*x4", "x1*x2*x3"]));
    assert_eq!(
        psi_zero_d(&r, 4).unwrap(),
        der(r.quotient(), &["-x2*x3*x4^2", "-x1*x3*x4^2", "-x1*x2*x4^2", "-x1*x2*x3*x4"])
    );
    assert!(psi_zero_d(&r, 6).is_err());
    assert!(xi_d(&r, 3).is_err());
    assert!(xi_d(&rs("B4"), 1).is_err());
}

#[test]
fn xi_identity_holds() {
    for n in 4..=6 {
        let r = rs(&format!("D{n}"));
        let psi = closed_form(&r).unwrap();
        let tilde = psi_tilde_d(&r).unwrap();
        let half = rational::frac(1, 2);
        for i in 0..=n - 2 {
            let xi = xi_d(&r, i).unwrap();
            let a1 = r.root(ri(i + 1, n)).unwrap();
            let a2 = r.root(ri(n, 2 * n - 1 - i)).unwrap();
            let rhs = |get: &dyn Fn(RootIndex) -> Derivation| {
                get(ri(i + 1, n - 1))
                    .mul_poly(a1)
                    .scale(&-&half)
                    .add(&get(ri(n, 2 * n - 2 - i)).mul_poly(a2).scale(&(sgn(n - i) * &half)))
            };
            assert_eq!(rhs(&|k| psi.get(k).unwrap().clone()), xi, "D{n} ξ_{i} via ψ");
            assert_eq!(rhs(&|k| tilde[&k].clone()), xi, "D{n} ξ_{i} via ψ̃");
        }
    }
}

#[test]
fn psi_tilde_agrees_modulo_full_arrangement() {
    for n in 4..=6 {
        let r = rs(&format!("D{n}"));
        let psi = closed_form(&r).unwrap();
        let tilde = psi_tilde_d(&r).unwrap();
        let full = LowerIdeal::full(&r);
        let mut same = 0;
        for (idx, d) in psi.derivs() {
            let diff = tilde[idx].sub(d);
            assert!(in_log_module(&diff, &r, &full), "D{n} ψ̃{idx} - ψ{idx}");
            same += diff.is_zero() as usize;
        }
        // Rows 2..n-1 below column n-1 never see a correction.
        assert!(same > 0);
    }
}

#[test]
fn type_d_matrices_realize_psi_tilde() {
    for n in 4..=6 {
        let r = rs(&format!("D{n}"));
        let m = paper_matrices(&r).unwrap();
        for (k, p) in m.levels().iter().enumerate() {
            let det = rational_det(p);
            let want = if k == 0 { rational::int(4) } else if k == n - 1 { rational::frac(1, 2) } else { rational::one() };
            assert_eq!(det, want, "D{n} det P_{k}");
        }
        let built = build_from_matrices(&r, &m).unwrap();
        let tilde = psi_tilde_d(&r).unwrap();
        assert_eq!(built.derivs().len(), tilde.len());
        for (idx, d) in built.derivs() {
            assert_eq!(d, &tilde[idx], "D{n} ψ̃{idx}");
        }
    }
}

#[test]
fn d4_matrix_entries_follow_the_reference_tables() {
    let r = rs("D4");
    let m = paper_matrices(&r).unwrap();
    let h = |s: &str| q(s);
    // P_1 over Λ_1 = {1,2,3,4}
    let p1 = vec![
        vec![h("1"), h("0"), h("0"), h("0")],
        vec![h("1"), h("1"), h("-1/2"), h("1/2")],
        vec![h("1"), h("1"), h("1/2"), h("1/2")],
        vec![h("-1"), h("-1"), h("-1/2"), h("1/2")],
    ];
    assert_eq!(m.level(1), &p1);
}

fn assert_same(a: &BTreeMap<RootIndex, Derivation>, b: &BTreeMap<RootIndex, Derivation>, what: &str) {
    assert_eq!(a.len(), b.len(), "{what}");
    for (k, v) in a {
        assert_eq!(v, &b[k], "{what} ψ{k}");
    }
}

#[test]
fn closed_forms_equal_matrix_recursion() {
    let mut types: Vec<String> = (1..=5).map(|n| format!("A{n}")).collect();
    types.extend((2..=4).map(|n| format!("B{n}")));
    types.extend((2..=4).map(|n| format!("C{n}")));
    types.push("G2".into());
    for t in types {
        let r = rs(&t);
        let closed = closed_form(&r).unwrap();
        let rec = build_from_matrices(&r, &paper_matrices(&r).unwrap()).unwrap();
        assert_same(closed.derivs(), rec.derivs(), &t);
    }
}

#[test]
fn base_case_is_scaled_coweight() {
    for t in ["A3", "B3", "C3", "D5", "G2", "F4"] {
        let r = rs(t);
        let m = paper_matrices(&r).unwrap();
        let b = build_from_matrices(&r, &m).unwrap();
        for (p, &l) in r.labels().iter().enumerate() {
            let want = dual_basis(&r, l).unwrap().scale(&m.p0()[p]);
            assert_eq!(b.get(ri(l, l)).unwrap(), &want, "{t} ψ({l},{l})");
        }
    }
}

#[test]
fn degrees_are_j_minus_i() {
    for t in ["A4", "B3", "C4", "D5", "G2", "F4"] {
        let b = idealarr::bases::default_basis(&rs(t)).unwrap();
        for (idx, d) in b.derivs() {
            if idx.i == idx.j {
                assert!(d.degree().unwrap() == 0);
            } else {
                assert_eq!(d.degree().unwrap() as usize, idx.j - idx.i, "{t} ψ{idx}");
            }
        }
    }
}

#[test]
fn g2_recursion_example() {
    let r = rs("G2");
    let b = closed_form(&r).unwrap();
    let a12 = r.root(ri(1, 2)).unwrap();
    let a23 = r.root(ri(2, 3)).unwrap();
    let want = b.get(ri(1, 1)).unwrap().mul_poly(a12).add(&b.get(ri(2, 2)).unwrap().mul_poly(a23));
    assert_eq!(b.get(ri(2, 3)).unwrap(), &want);
}

/// The four conditions characterizing the recursion (items (3) and (4) are
/// the divisibility conditions).
fn check_conditions(r: &RootSystem, get: impl Fn(RootIndex) -> Derivation) {
    for m in 0..=r.height() {
        let h: Vec<usize> = r.labels().iter().zip(r.exponents()).map(|(&l, &e)| l + e.min(m)).collect();
        let ideal = ideal_from_hessenberg(r, &HessenbergFunction::new(h.clone())).unwrap();
        for (&l, &v) in r.labels().iter().zip(&h) {
            assert!(in_log_module(&get(ri(l, v)), r, &ideal), "{} m={m} ψ({l},{v})", r.lie_type());
        }
        if m == r.height() {
            continue;
        }
        let lam = r.lambda_set(m).unwrap();
        let next = r.lambda_set(m + 1).unwrap();
        for &i in &lam {
            for &j in next.iter().filter(|&&j| j != i) {
                let beta = r.root(ri(j, j + m + 1)).unwrap();
                let v = get(ri(i, i + m)).apply(beta);
                assert!(v.restrict_to(beta).unwrap().is_zero(), "{} ψ({i},{}) at α({j},{})", r.lie_type(), i + m, j + m + 1);
            }
        }
    }
}

#[test]
fn recursion_conditions_hold() {
    for t in ["A4", "B3", "C3", "D4", "D5", "G2", "F4"] {
        let r = rs(t);
        let b = idealarr::bases::default_basis(&r).unwrap();
        check_conditions(&r, |k| b.get(k).unwrap().clone());
    }
}

#[test]
fn singular_matrices_are_rejected() {
    let r = rs("G2");
    let m = paper_matrices(&r).unwrap();
    let bad = m.with_entry(1, 0, 1, rational::one());
    assert!(build_from_matrices(&r, &bad).is_err());
    let bad0 = MatrixFamily::new(&r, {
        let mut l = m.levels().to_vec();
        l[0][0][1] = rational::one();
        l
    });
    assert!(bad0.is_err());
}

#[test]
fn stored_matrix_samples() {
    let g2 = paper_matrices(&rs("G2")).unwrap();
    assert_eq!(g2.level(1), &vec![vec![q("1"), q("0")], vec![q("1"), q("1")]]);
    let f4 = paper_matrices(&rs("F4")).unwrap();
    assert_eq!(f4.level(3)[1], vec![q("1"), q("1"), q("-1")]);
    let c4 = paper_matrices(&rs("C4")).unwrap();
    assert_eq!(c4.level(0)[3][3], q("2"));
    assert_eq!(c4.level(1)[3], vec![q("2"), q("2"), q("2"), q("1")]);
    for t in ["E6", "E7", "E8"] {
        let r = rs(t);
        let m = paper_matrices(&r).unwrap();
        for (k, p) in m.levels().iter().enumerate() {
            assert!(!rational_det(p).is_zero(), "{t} P_{k}");
        }
    }
}

#[test]
fn restriction_bases_start_from_coweights() {
    let e8 = rs("E8");
    let parent = build_with_budget(&e8, &paper_matrices(&e8).unwrap(), 2).unwrap();
    let e7 = restrict_basis(&e8, &[1, 3, 4, 5, 6, 7, 8], &parent, 2).unwrap();
    assert!(matches!(e7.source(), BasisSource::Restriction { .. }));
    let r7 = rs("E7");
    assert_eq!(e7.get(ri(1, 1)).unwrap(), &der(r7.quotient(), &["1", "-1", "0", "0", "0", "0", "0", "0"]));
    let e6 = restrict_basis(&e8, &[1, 4, 5, 6, 7, 8], &parent, 2).unwrap();
    let r6 = rs("E6");
    assert_eq!(
        e6.get(ri(7, 7)).unwrap(),
        &der(r6.quotient(), &["1/2", "-1/2", "-1/2", "1/2", "1/2", "1/2", "1/2", "-1/2"])
    );
    assert!(e6.get(ri(1, 4)).is_err());
    let same = restrict_basis(&e8, &[1, 2, 3, 4, 5, 6, 7, 8], &parent, 2).unwrap();
    assert_same(same.derivs(), parent.derivs(), "identity");
    assert!(restrict_basis(&e8, &[1, 2, 3], &parent, 2).is_err());
}

#[test]
fn pointwise_evaluation_matches_symbolic() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for t in ["F4", "E6"] {
        let r = rs(t);
        let b = idealarr::bases::default_basis(&r).unwrap();
        let pt = idealarr::exactmath::sample::random_point(r.quotient(), &mut rng);
        let vals = b.evaluate_at(&pt).unwrap();
        assert_eq!(vals.len(), b.indices().len());
        for (idx, d) in b.derivs() {
            assert_eq!(d.evaluate(&pt).unwrap(), vals[idx], "{t} ψ{idx}");
        }
    }
}

#[test]
fn restriction_identity_e8_to_e7_and_e6() {
    let e8 = rs("E8");
    let mats = paper_matrices(&e8).unwrap();
    let parent = build_with_budget(&e8, &mats, 4).unwrap();
    for subset in [vec![1, 3, 4, 5, 6, 7, 8], vec![1, 4, 5, 6, 7, 8]] {
        let sub = restrict_basis(&e8, &subset, &parent, 4).unwrap();
        let check = restriction_identity(&e8, &parent, &sub, 2, 1).unwrap();
        assert!(check.holds(), "{subset:?} {:?}", check.mismatches);
        assert!(check.symbolic > 0 && check.sampled > 0);
    }
}

#[test]
fn restriction_identity_detects_a_foreign_parent() {
    let e8 = rs("E8");
    let mats = paper_matrices(&e8).unwrap();
    let parent = build_with_budget(&e8, &mats, 3).unwrap();
    let sub = restrict_basis(&e8, &[1, 4, 5, 6, 7, 8], &parent, 3).unwrap();
    let bumped = mats.with_entry(2, 1, 0, &mats.level(2)[1][0] + rational::int(1));
    let other = build_with_budget(&e8, &bumped, 3).unwrap();
    let check = restriction_identity(&e8, &other, &sub, 1, 1).unwrap();
    assert!(!check.holds());
    assert!(restriction_identity(&e8, &parent, &parent, 1, 1).is_err());
}
