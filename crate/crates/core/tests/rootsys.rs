use idealarr::exactmath::rational::{frac, int, Rational};
use idealarr::exactmath::Polynomial;
use idealarr::rootsys::{is_simple, Family, LieType, RootIndex, RootSystem};
use num_traits::Zero;

fn rs(s: &str) -> RootSystem {
    RootSystem::build(s.parse().unwrap()).unwrap()
}

fn lin(rs: &RootSystem, c: &[i64]) -> Polynomial {
    let v: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
    rs.quotient().normalize_linear(&v)
}

fn desk_types() -> Vec<&'static str> {
    vec![
        "A1", "A2", "A3", "A4", "A5", "A9", "B2", "B3", "B4", "B7", "C2", "C3", "C4", "C6", "D4", "D5", "D6",
        "D8", "G2", "F4", "E6", "E7", "E8",
    ]
}

#[test]
fn type_parsing() {
    assert_eq!("D4".parse::<LieType>().unwrap(), LieType { family: Family::D, rank: 4 });
    assert_eq!("e8".parse::<LieType>().unwrap().to_string(), "E8");
    for bad in ["D3", "D2", "E5", "E9", "F3", "G3", "B1", "C1", "A0", "X4", "A", ""] {
        assert!(bad.parse::<LieType>().is_err(), "{bad}");
    }
}

#[test]
fn root_counts() {
    let expect = |t: &str| -> usize {
        let lt: LieType = t.parse().unwrap();
        let n = lt.rank;
        match lt.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    };
    for t in desk_types() {
        let r = rs(t);
        assert_eq!(r.num_roots(), expect(t), "{t}");
        assert_eq!(r.exponents().iter().sum::<usize>(), r.num_roots(), "{t}");
    }
}

#[test]
fn structural_invariants() {
    for t in desk_types() {
        let r = rs(t);
        let n = r.rank();
        for p in 0..n {
            // α_{i,i+1} is simple and the row is a chain of covers.
            let first = &r.roots()[r.root_at(p, 1).unwrap()];
            assert!(is_simple(&first.coords), "{t} row {p}");
            assert_eq!(first.coords[p], 1, "{t} row {p}");
            for step in 1..r.exponents()[p] {
                let a = r.root_at(p, step).unwrap();
                let b = r.root_at(p, step + 1).unwrap();
                assert!(r.covers().contains(&(a, b)), "{t}: chain broken at row {p} step {step}");
            }
        }
        for root in r.roots() {
            assert_eq!(root.height(), root.index.j - root.index.i, "{t} α{}", root.index);
            assert_eq!(r.height_of(root.index).unwrap(), root.index.j - root.index.i);
            assert!(root.coords.iter().all(|&c| c >= 0), "{t}: negative coordinate");
        }
        // Distinct roots.
        let mut forms: Vec<String> = r.roots().iter().map(|x| x.form.to_string()).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), r.num_roots(), "{t}");
        // Coweights are tangent and dual to the simple roots.
        for (p, w) in r.coweights().iter().enumerate() {
            assert!(r.quotient().is_tangent(w), "{t}");
            for q in 0..n {
                let c = r.simple_root(q).linear_coeffs().unwrap();
                let v: Rational = c.iter().zip(w).map(|(a, b)| a * b).sum();
                let want = if p == q { int(1) } else { Rational::zero() };
                assert_eq!(v, want, "{t} coweight {p} on simple root {q}");
            }
        }
        // Covers are exactly the pairs differing by a simple root.
        for &(a, b) in r.covers() {
            let d: Vec<i64> = r.roots()[b].coords.iter().zip(&r.roots()[a].coords).map(|(x, y)| x - y).collect();
            assert!(is_simple(&d));
        }
        // Highest root is unique.
        let top: Vec<_> = r.roots().iter().filter(|x| x.height() == r.height()).collect();
        assert_eq!(top.len(), 1, "{t}");
        assert_eq!(r.lambda_set(r.height()).unwrap().len(), 1);
        assert_eq!(r.lambda_set(0).unwrap(), r.labels());
    }
}

#[test]
fn cover_count_oracle() {
    // Independent count: β covers α iff β - α is simple. Compare pairwise.
    for t in ["B3", "D4", "G2", "F4", "E6"] {
        let r = rs(t);
        let mut count = 0;
        for a in r.roots() {
            for b in r.roots() {
                let d: Vec<i64> = b.coords.iter().zip(&a.coords).map(|(x, y)| x - y).collect();
                if is_simple(&d) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, r.covers().len(), "{t}");
    }
}

#[test]
fn reference_root_examples() {
    let a4 = rs("A4");
    assert_eq!(a4.root(RootIndex::new(1, 3)).unwrap(), &lin(&a4, &[1, 0, -1, 0, 0]));
    let b3 = rs("B3");
    assert_eq!(b3.root(RootIndex::new(1, 4)).unwrap(), &lin(&b3, &[1, 0, 0]));
    let d4 = rs("D4");
    assert_eq!(d4.root(RootIndex::new(4, 6)).unwrap(), &lin(&d4, &[0, 1, 0, 1]));
    assert_eq!(d4.root(RootIndex::new(1, 4)).unwrap(), &lin(&d4, &[1, 0, 0, -1]));
    assert_eq!(d4.root(RootIndex::new(4, 7)).unwrap(), &lin(&d4, &[1, 0, 0, 1]));
    let g2 = rs("G2");
    assert_eq!(g2.root(RootIndex::new(1, 6)).unwrap(), &lin(&g2, &[-1, -1, 2]));
    assert_eq!(g2.height_of(RootIndex::new(1, 6)).unwrap(), 5);
    let e8 = rs("E8");
    assert_eq!(e8.root(RootIndex::new(2, 31)).unwrap(), &lin(&e8, &[1, 1, 0, 0, 0, 0, 0, 0]));
    assert_eq!(e8.height_of(RootIndex::new(2, 31)).unwrap(), 29);
    assert!(e8.root(RootIndex::new(2, 32)).is_err());
    assert!(e8.height_of(RootIndex::new(9, 10)).is_err());
}

#[test]
fn exponents_match_tables() {
    let e = |t: &str| rs(t).exponents().to_vec();
    assert_eq!(e("G2"), vec![5, 1]);
    assert_eq!(e("F4"), vec![1, 11, 7, 5]);
    assert_eq!(e("E8"), vec![19, 29, 23, 13, 11, 7, 1, 17]);
    assert_eq!(rs("E7").labels(), &[1, 3, 4, 5, 6, 7, 8]);
    assert_eq!(e("E7"), vec![9, 17, 13, 11, 7, 1, 5]);
    assert_eq!(rs("E6").labels(), &[1, 4, 5, 6, 7, 8]);
    assert_eq!(e("E6"), vec![5, 11, 8, 7, 1, 4]);
    for n in 4..=8 {
        let mut want: Vec<usize> = (1..n).map(|i| 2 * (n - i) - 1).collect();
        want.push(n - 1);
        assert_eq!(e(&format!("D{n}")), want);
    }
    for n in 2..=6 {
        let want: Vec<usize> = (1..=n).map(|i| 2 * (n - i) + 1).collect();
        assert_eq!(e(&format!("B{n}")), want);
        assert_eq!(e(&format!("C{n}")), want);
    }
}

#[test]
fn subsystem_quotients() {
    // E7 is cut by x1 + x2, E6 additionally by ½x1 - ½x2 + x3.
    let e7 = rs("E7");
    assert!(e7.quotient().normalize(&lin(&e7, &[1, 1, 0, 0, 0, 0, 0, 0])).is_zero());
    let e6 = rs("E6");
    let h: Vec<Rational> = vec![frac(1, 2), frac(-1, 2), int(1), int(0), int(0), int(0), int(0), int(0)];
    assert!(e6.quotient().normalize_linear(&h).is_zero());
    assert_eq!(e6.quotient().normalize(&lin(&e6, &[0, 0, 1, 0, 0, 0, 0, 0])), lin(&e6, &[-1, 0, 0, 0, 0, 0, 0, 0]));
    // The projected E8 roots free of α2 (and α3) are exactly the stored rows.
    let e8 = rs("E8");
    for (sub, removed) in [(&e7, vec![1usize]), (&e6, vec![1, 2])] {
        let mut from_e8: Vec<String> = e8
            .roots()
            .iter()
            .filter(|r| removed.iter().all(|&k| r.coords[k] == 0))
            .map(|r| sub.quotient().normalize(&r.form).to_string())
            .collect();
        let mut stored: Vec<String> = sub.roots().iter().map(|r| r.form.to_string()).collect();
        from_e8.sort();
        stored.sort();
        assert_eq!(from_e8, stored);
    }
}

#[test]
fn lambda_tables() {
    let l = |t: &str, m: usize| rs(t).lambda_set(m).unwrap();
    assert_eq!(l("F4", 6), vec![2, 3]);
    assert_eq!(l("F4", 2), vec![2, 3, 4]);
    assert_eq!(l("F4", 11), vec![2]);
    assert_eq!(l("G2", 1), vec![1, 2]);
    assert_eq!(l("G2", 2), vec![1]);
    let e8 = [
        (2, vec![1, 2, 3, 4, 5, 6, 8]),
        (8, vec![1, 2, 3, 4, 5, 8]),
        (12, vec![1, 2, 3, 4, 8]),
        (14, vec![1, 2, 3, 8]),
        (18, vec![1, 2, 3]),
        (20, vec![2, 3]),
        (24, vec![2]),
    ];
    for (m, want) in e8 {
        assert_eq!(l("E8", m), want, "E8 m={m}");
    }
    // E7 and E6 follow from their exponent lists; the reference tables carry
    // the same sizes but different labels.
    let e7 = [(1, vec![1, 3, 4, 5, 6, 7, 8]), (2, vec![1, 3, 4, 5, 6, 8]), (6, vec![1, 3, 4, 5, 6]),
        (8, vec![1, 3, 4, 5]), (10, vec![3, 4, 5]), (12, vec![3, 4]), (14, vec![3]), (17, vec![3])];
    for (m, want) in e7 {
        assert_eq!(l("E7", m), want, "E7 m={m}");
    }
    let e6 = [(1, vec![1, 4, 5, 6, 7, 8]), (2, vec![1, 4, 5, 6, 8]), (5, vec![1, 4, 5, 6]),
        (6, vec![4, 5, 6]), (8, vec![4, 5]), (9, vec![4]), (11, vec![4])];
    for (m, want) in e6 {
        assert_eq!(l("E6", m), want, "E6 m={m}");
    }
    // D_n with m = 2k or 2k+1: [n-k-1] ∪ {n} below n, [n-k-1] from n on.
    for n in 4..=8usize {
        for m in 1..=2 * n - 3 {
            let k = m / 2;
            let mut want: Vec<usize> = (1..n - k).collect();
            if m < n {
                want.push(n);
            }
            assert_eq!(l(&format!("D{n}"), m), want, "D{n} m={m}");
        }
    }
    assert_eq!(l("D4", 3), vec![1, 2, 4]);
    assert!(rs("D4").lambda_set(6).is_err());
}

#[test]
fn i_slices() {
    let a4 = rs("A4");
    let s = a4.i_slice(1).unwrap();
    for i in 1..=4 {
        let mut c = vec![0; 5];
        c[i - 1] = 1;
        c[i] = -1;
        assert_eq!(s[&i], lin(&a4, &c));
    }
    let c2 = rs("C2");
    let s = c2.i_slice(3).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[&1], lin(&c2, &[2, 0]));
    let d4 = rs("D4");
    let s = d4.i_slice(3).unwrap();
    assert_eq!(s.keys().copied().collect::<Vec<_>>(), vec![1, 2, 4]);
    assert_eq!(s[&1], lin(&d4, &[1, 0, 0, -1]));
    assert_eq!(s[&2], lin(&d4, &[0, 1, 1, 0]));
    assert_eq!(s[&4], lin(&d4, &[1, 0, 0, 1]));
    assert!(d4.i_slice(0).is_err());
    assert!(d4.i_slice(6).is_err());
}

#[test]
fn roots_json_shape() {
    let v = rs("D4").to_json();
    assert_eq!(v["type"], "D4");
    assert_eq!(v["roots"].as_array().unwrap().len(), 12);
    let r = &v["roots"][9];
    assert_eq!((r["i"].as_u64(), r["j"].as_u64()), (Some(4), Some(5)));
    assert!(v["covers"][0][0]["i"].is_u64());
}
