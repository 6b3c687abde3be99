//! Positive-root tables in the row/column coordinates α_{i,j}.
//!
//! Each table lists, per row i, the ambient coefficient vectors of
//! α_{i,i+1}, ..., α_{i,i+e_i}.

use crate::exactmath::rational::{frac, int, Rational};

pub type Row = Vec<Vec<Rational>>;

fn unit(n: usize, k: usize, c: i64) -> Vec<Rational> {
    let mut v = vec![int(0); n];
    v[k] = int(c);
    v
}

fn sum(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Parse the compact notation used for E8 and F4 roots.
///
/// `"x2"` is x_2, `"2-3"` is x_2 - x_3, `"2+7"` is x_2 + x_7, and `"h178"` is
/// ½(±x_1 ± ... ± x_n) with plus signs exactly at the listed indices.
pub fn parse_root(s: &str, n: usize) -> Vec<Rational> {
    if let Some(k) = s.strip_prefix('x') {
        return unit(n, k.parse::<usize>().expect("index") - 1, 1);
    }
    if let Some(pos) = s.strip_prefix('h') {
        let plus: Vec<usize> = pos.bytes().map(|b| (b - b'0') as usize).collect();
        return (1..=n)
            .map(|k| if plus.contains(&k) { frac(1, 2) } else { frac(-1, 2) })
            .collect();
    }
    let (idx, op) = s
        .char_indices()
        .find(|(_, c)| *c == '+' || *c == '-')
        .expect("root notation has a sign");
    let a: usize = s[..idx].parse().expect("index");
    let b: usize = s[idx + 1..].parse().expect("index");
    let mut v = unit(n, a - 1, 1);
    v[b - 1] = int(if op == '+' { 1 } else { -1 });
    v
}

fn parse_rows(rows: &[&[&str]], n: usize) -> Vec<Row> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_root(s, n)).collect())
        .collect()
}

/// A_{n-1} in n ambient coordinates: α_{i,j} = x_i - x_j.
pub fn type_a(n: usize) -> Vec<Row> {
    (1..n)
        .map(|i| {
            (i + 1..=n)
                .map(|j| {
                    let mut v = unit(n, i - 1, 1);
                    v[j - 1] = int(-1);
                    v
                })
                .collect()
        })
        .collect()
}

pub fn type_b(n: usize) -> Vec<Row> {
    (1..=n)
        .map(|i| {
            (i + 1..=2 * n + 1 - i)
                .map(|j| {
                    let xi = unit(n, i - 1, 1);
                    if j <= n {
                        sum(&xi, &unit(n, j - 1, -1))
                    } else if j == n + 1 {
                        xi
                    } else {
                        sum(&xi, &unit(n, 2 * n + 2 - j - 1, 1))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn type_c(n: usize) -> Vec<Row> {
    (1..=n)
        .map(|i| {
            (i + 1..=2 * n + 1 - i)
                .map(|j| {
                    let xi = unit(n, i - 1, 1);
                    if j <= n {
                        sum(&xi, &unit(n, j - 1, -1))
                    } else if j <= 2 * n - i {
                        sum(&xi, &unit(n, 2 * n + 1 - j - 1, 1))
                    } else {
                        unit(n, i - 1, 2)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn type_d(n: usize) -> Vec<Row> {
    let mut rows: Vec<Row> = (1..n)
        .map(|i| {
            (i + 1..=2 * n - 1 - i)
                .map(|j| {
                    let xi = unit(n, i - 1, 1);
                    if j <= n {
                        sum(&xi, &unit(n, j - 1, -1))
                    } else {
                        sum(&xi, &unit(n, 2 * n - j - 1, 1))
                    }
                })
                .collect()
        })
        .collect();
    rows.push(
        (n + 1..=2 * n - 1)
            .map(|j| sum(&unit(n, 2 * n - j - 1, 1), &unit(n, n - 1, 1)))
            .collect(),
    );
    rows
}

pub fn type_g2() -> Vec<Row> {
    let v = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
    vec![
        vec![v(1, -1, 0), v(-1, 0, 1), v(0, -1, 1), v(1, -2, 1), v(-1, -1, 2)],
        vec![v(-2, 1, 1)],
    ]
}

pub const F4_EXPONENTS: [usize; 4] = [1, 11, 7, 5];

pub const F4_ROWS: [&[&str]; 4] = [
    &["h1"],
    &["2-3", "2-4", "x2", "2+4", "2+3", "h123", "h1234", "x1", "1+4", "1+3", "1+2"],
    &["3-4", "x3", "3+4", "h134", "1-2", "1-3", "1-4"],
    &["x4", "h14", "h13", "h12", "h124"],
];

pub fn type_f4() -> Vec<Row> {
    parse_rows(&F4_ROWS, 4)
}

pub const E8_EXPONENTS: [usize; 8] = [19, 29, 23, 13, 11, 7, 1, 17];

pub const E8_ROWS: [&[&str]; 8] = [
    &[
        "h1", "h178", "h168", "h158", "h148", "h138", "h137", "h136", "h135", "h125", "h124",
        "h12478", "h12468", "h12458", "h12457", "h12456", "h1245678", "h1235678", "h1234678",
    ],
    &[
        "2-3", "2-4", "2-5", "2-6", "2-7", "2-8", "2+7", "2+6", "2+5", "2+4", "2+3", "h123",
        "h12378", "h12368", "h12358", "h12348", "h12347", "h12346", "h12345", "h1234578",
        "h1234568", "h1234567", "1-8", "1+7", "1+6", "1+5", "1+4", "1+3", "1+2",
    ],
    &[
        "3-4", "3-5", "3-6", "3-7", "3-8", "3+7", "3+6", "3+5", "3+4", "h134", "h13478",
        "h13468", "h13458", "h13457", "h13456", "h1345678", "1-2", "1-3", "1-4", "1-5", "1-6",
        "1-7", "1+8",
    ],
    &[
        "4-5", "4-6", "4-7", "4-8", "4+7", "4+6", "4+5", "h145", "h14578", "h14568", "h14567",
        "h13567", "h13467",
    ],
    &[
        "5-6", "5-7", "5-8", "5+7", "5+6", "h156", "h15678", "h14678", "h13678", "h13578",
        "h13568",
    ],
    &["6-7", "6-8", "6+7", "h167", "h157", "h147", "h146"],
    &["7-8"],
    &[
        "7+8", "6+8", "5+8", "4+8", "3+8", "2+8", "h128", "h127", "h126", "h12678", "h12578",
        "h12568", "h12567", "h12467", "h12367", "h12357", "h12356",
    ],
];

pub fn type_e8() -> Vec<Row> {
    parse_rows(&E8_ROWS, 8)
}

/// Reference exponents for the E7 and E6 subsystems, keyed by row label.
pub const E7_EXPONENTS: [(usize, usize); 7] = [(1, 9), (3, 17), (4, 13), (5, 11), (6, 7), (7, 1), (8, 5)];
pub const E6_EXPONENTS: [(usize, usize); 6] = [(1, 5), (4, 11), (5, 8), (6, 7), (7, 1), (8, 4)];
