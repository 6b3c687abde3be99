use idealarr::ideals::{
    dual_partition, enumerate_lower_ideals, exponents_of, hessenberg_from_ideal, ideal_from_hessenberg,
    is_downward_closed, lambda_of_ideal, validate_hessenberg_conditions, HessenbergFunction, LowerIdeal,
};
use idealarr::rootsys::{RootIndex, RootSystem};
use idealarr::Error;
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

fn h(v: &[usize]) -> HessenbergFunction {
    HessenbergFunction::new(v.to_vec())
}

/// Closure filter over every subset of Φ⁺. Uses only the root coordinates,
/// not the stored cover lists: α ≤ β iff β - α has nonnegative coordinates.
fn brute_force_count(rs: &RootSystem) -> usize {
    let roots = rs.roots();
    let n = roots.len();
    let below: Vec<u32> = roots
        .iter()
        .map(|b| {
            roots
                .iter()
                .enumerate()
                .filter(|(_, a)| a.coords.iter().zip(&b.coords).all(|(x, y)| x <= y))
                .fold(0u32, |m, (k, _)| m | 1 << k)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|k| s >> k & 1 == 0 || below[k] & !s == 0))
        .count()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn counts_against_brute_force() {
    for t in ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"] {
        let r = rs(t);
        assert_eq!(enumerate_lower_ideals(&r).len(), brute_force_count(&r), "{t}");
    }
    assert_eq!(enumerate_lower_ideals(&rs("G2")).len(), 8);
    assert_eq!(enumerate_lower_ideals(&rs("B3")).len(), 20);
    assert_eq!(enumerate_lower_ideals(&rs("F4")).len(), 105);
}

#[test]
fn counts_against_catalan_formulas() {
    for n in 1..=7u64 {
        let catalan = binom(2 * n + 2, n + 1) / (n + 2);
        assert_eq!(enumerate_lower_ideals(&rs(&format!("A{n}"))).len() as u64, catalan);
    }
    for n in 2..=6u64 {
        assert_eq!(enumerate_lower_ideals(&rs(&format!("B{n}"))).len() as u64, binom(2 * n, n));
        assert_eq!(enumerate_lower_ideals(&rs(&format!("C{n}"))).len() as u64, binom(2 * n, n));
    }
    for n in 4..=7u64 {
        let want = binom(2 * n, n) - binom(2 * n - 2, n - 1);
        assert_eq!(enumerate_lower_ideals(&rs(&format!("D{n}"))).len() as u64, want);
    }
    assert_eq!(enumerate_lower_ideals(&rs("E6")).len(), 833);
    assert_eq!(enumerate_lower_ideals(&rs("E7")).len(), 4160);
}

#[test]
fn enumeration_order_and_uniqueness() {
    let r = rs("D5");
    let all = enumerate_lower_ideals(&r);
    for w in all.windows(2) {
        let a = (w[0].len(), w[0].indices());
        let b = (w[1].len(), w[1].indices());
        assert!(a < b);
    }
    assert!(all.iter().all(|i| is_downward_closed(&r, i.mask())));
    assert_eq!(all[0], LowerIdeal::empty());
    assert_eq!(*all.last().unwrap(), LowerIdeal::full(&r));
}

#[test]
fn a4_example() {
    let r = rs("A4");
    let members = [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)].map(|(i, j)| RootIndex::new(i, j));
    let ideal = LowerIdeal::from_members(&r, &members).unwrap();
    assert_eq!(hessenberg_from_ideal(&r, &ideal).unwrap().values(), &[3, 3, 5, 5]);
    assert_eq!(exponents_of(&r, &ideal).unwrap(), vec![2, 1, 2, 1]);
    assert_eq!(lambda_of_ideal(&r, &ideal).unwrap(), vec![1, 3]);
}

#[test]
fn d4_figure_ideal() {
    let r = rs("D4");
    let ideal = ideal_from_hessenberg(&r, &h(&[3, 5, 4, 7])).unwrap();
    assert_eq!(ideal.len(), 9);
    assert_eq!(hessenberg_from_ideal(&r, &ideal).unwrap().values(), &[3, 5, 4, 7]);
    assert!(validate_hessenberg_conditions(r.lie_type(), &[3, 5, 4, 7]));
}

#[test]
fn trivial_ideals() {
    for t in ["A3", "B3", "D4", "G2", "F4", "E6", "E8"] {
        let r = rs(t);
        let id = HessenbergFunction::identity(&r);
        let empty = ideal_from_hessenberg(&r, &id).unwrap();
        assert!(empty.is_empty());
        assert_eq!(hessenberg_from_ideal(&r, &LowerIdeal::empty()).unwrap(), id);
        assert!(exponents_of(&r, &empty).unwrap().iter().all(|&e| e == 0));
        assert!(validate_hessenberg_conditions(r.lie_type(), id.values()));
        assert_eq!(lambda_of_ideal(&r, &empty), Err(Error::HeightUndefined));

        let peterson: Vec<usize> = r.labels().iter().map(|l| l + 1).collect();
        let simple = ideal_from_hessenberg(&r, &h(&peterson)).unwrap();
        assert_eq!(simple.len(), r.rank());
        assert_eq!(lambda_of_ideal(&r, &simple).unwrap(), r.labels());

        let top: Vec<usize> = r.labels().iter().zip(r.exponents()).map(|(l, e)| l + e).collect();
        assert_eq!(ideal_from_hessenberg(&r, &h(&top)).unwrap(), LowerIdeal::full(&r));
        let mut exps = exponents_of(&r, &LowerIdeal::full(&r)).unwrap();
        exps.sort_unstable();
        let mut want = r.exponents().to_vec();
        want.sort_unstable();
        assert_eq!(exps, want);

        for m in 0..=r.height() {
            let im = LowerIdeal::of_height(&r, m);
            assert!(is_downward_closed(&r, im.mask()));
            if m > 0 {
                assert_eq!(lambda_of_ideal(&r, &im).unwrap(), r.lambda_set(m).unwrap(), "{t} m={m}");
            }
        }
    }
}

#[test]
fn b2_full_exponents() {
    let r = rs("B2");
    let mut e = exponents_of(&r, &LowerIdeal::full(&r)).unwrap();
    e.sort_unstable();
    assert_eq!(e, vec![1, 3]);
}

#[test]
fn rejects_bad_input() {
    let r = rs("B3");
    // α_{1,3} without α_{2,3}.
    let bad = LowerIdeal::from_members(&r, &[RootIndex::new(1, 2), RootIndex::new(1, 3)]);
    assert!(matches!(bad, Err(Error::NotDownwardClosed(_))));
    assert!(matches!(ideal_from_hessenberg(&r, &h(&[6, 3, 4])), Err(Error::InvalidHessenberg(_))));
    assert!(!validate_hessenberg_conditions(r.lie_type(), &[6, 3, 4]));
    assert!(ideal_from_hessenberg(&r, &h(&[8, 3, 4])).is_err());
    assert!(ideal_from_hessenberg(&r, &h(&[1, 2])).is_err());
}

/// Every candidate within the row bounds.
fn candidates(r: &RootSystem) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for (p, &l) in r.labels().iter().enumerate() {
        let mut next = Vec::new();
        for prefix in &out {
            for v in l..=l + r.exponents()[p] {
                let mut x: Vec<usize> = prefix.clone();
                x.push(v);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

#[test]
fn condition_lists_match_closure() {
    for t in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6"] {
        let r = rs(t);
        let mut valid = 0;
        for v in candidates(&r) {
            let by_closure = ideal_from_hessenberg(&r, &h(&v)).is_ok();
            assert_eq!(validate_hessenberg_conditions(r.lie_type(), &v), by_closure, "{t} h={v:?}");
            valid += by_closure as usize;
        }
        assert_eq!(valid, enumerate_lower_ideals(&r).len(), "{t}");
    }
}

proptest! {
    #[test]
    fn exponent_routes_agree(seed in 0usize..10_000, t in prop::sample::select(vec!["B4", "D5", "F4", "E6", "G2", "C3"])) {
        let r = rs(t);
        let all = enumerate_lower_ideals(&r);
        let ideal = all[seed % all.len()];
        let mut a = exponents_of(&r, &ideal).unwrap();
        a.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(&a, &dual_partition(&r, &ideal));
        prop_assert_eq!(a.iter().sum::<usize>(), ideal.len());
        let back = ideal_from_hessenberg(&r, &hessenberg_from_ideal(&r, &ideal).unwrap()).unwrap();
        prop_assert_eq!(back, ideal);
    }
}
