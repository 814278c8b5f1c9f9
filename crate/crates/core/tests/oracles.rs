//! Family values against brute-force enumeration and classical number
//! recurrences, computed here without the library's own routes.

use std::collections::BTreeMap;

use stirpoly::derived::{comtet, cycle_indicator, forest, idempotency, lah_signed, lah_unsigned};
use stirpoly::families::{bell, geometric, stirling1, stirling2, stirling_a_at, tree_poly_hat};
use stirpoly::inversion::{knuth_pittel, knuth_pittel_coeff};
use stirpoly::numbers::{binomial, int, rat};
use stirpoly::{x, MultiPoly, PowerSeries, Rational, Var};

/// Restricted growth strings: all set partitions of `{0..n}` as block labels.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            if i == 0 && b > 0 {
                break;
            }
            cur.push(b);
            go(i + 1, n, cur, if i == 0 { 0 } else { max.max(b) }, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(0, n, &mut Vec::new(), 0, &mut out);
    }
    out
}

fn block_sizes(labels: &[usize]) -> Vec<usize> {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &b in labels {
        *sizes.entry(b).or_default() += 1;
    }
    sizes.into_values().collect()
}

fn product_of_vars(sizes: &[usize]) -> MultiPoly {
    sizes
        .iter()
        .fold(MultiPoly::one(), |acc, &s| &acc * &x(s as Var))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

fn s2_table(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = k as i64 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s
}

fn c_table(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n + 1]; n + 1];
    c[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            c[i][k] = (i as i64 - 1) * c[i - 1][k] + c[i - 1][k - 1];
        }
    }
    c
}

fn fact(n: i64) -> i64 {
    (1..=n).product()
}

#[test]
fn bell_matches_set_partition_enumeration() {
    for n in 0..=7usize {
        let mut by_k: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for labels in set_partitions(n) {
            let sizes = block_sizes(&labels);
            *by_k.entry(sizes.len()).or_insert_with(MultiPoly::zero) += product_of_vars(&sizes);
        }
        for k in 0..=n {
            let expected = by_k.remove(&k).unwrap_or_else(MultiPoly::zero);
            assert_eq!(bell(n as i64, k as i64), expected, "B({n},{k})");
        }
    }
}

#[test]
fn cycle_indicator_matches_permutation_enumeration() {
    for n in 1..=6usize {
        let mut by_k: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for p in permutations(n) {
            let lens = cycle_lengths(&p);
            *by_k.entry(lens.len()).or_insert_with(MultiPoly::zero) += product_of_vars(&lens);
        }
        for k in 1..=n {
            let expected = by_k.remove(&k).unwrap_or_else(MultiPoly::zero);
            assert_eq!(cycle_indicator(n as i64, k as i64), expected, "Z({n},{k})");
        }
    }
}

#[test]
fn stirling_numbers_by_recurrence() {
    let s2 = s2_table(9);
    let c = c_table(9);
    let one = int(1);
    for n in 0..=9i64 {
        for k in 0..=n {
            let (nu, ku) = (n as usize, k as usize);
            assert_eq!(stirling2(n, k), int(s2[nu][ku]));
            let signed = if (n - k) % 2 == 0 {
                c[nu][ku]
            } else {
                -c[nu][ku]
            };
            assert_eq!(stirling1(n, k), int(signed));
            if n <= 8 {
                assert_eq!(bell(n, k).unify(&one).unwrap(), int(s2[nu][ku]));
                assert_eq!(cycle_indicator(n, k).unify(&one).unwrap(), int(c[nu][ku]));
            }
            if n <= 7 {
                assert_eq!(
                    comtet(n, k).unify(&one).unwrap(),
                    int(c[nu][ku]),
                    "C({n},{k}) at 1"
                );
                let at = comtet(n, k)
                    .evaluate(|v| if v <= 1 { int(1) } else { int(0) })
                    .unwrap();
                assert_eq!(at, int(s2[nu][ku]), "C({n},{k}) at (1,1,0,...)");
            }
        }
    }
}

#[test]
fn counting_families_unify_to_known_numbers() {
    let one = int(1);
    for n in 1..=7i64 {
        for k in 1..=n {
            let lah = int(fact(n) / fact(k)) * binomial(n - 1, k - 1);
            assert_eq!(lah_unsigned(n, k).unify(&one).unwrap(), lah, "L+({n},{k})");
            // signed Lah numbers carry (-1)^n
            let signed = if n % 2 == 0 { lah.clone() } else { -lah };
            assert_eq!(lah_signed(n, k).unify(&one).unwrap(), signed, "L({n},{k})");
            let idem = binomial(n, k) * int(k.pow((n - k) as u32));
            assert_eq!(idempotency(n, k).unify(&one).unwrap(), idem, "I({n},{k})");
            let planted = binomial(n - 1, k - 1) * int(n.pow((n - k) as u32));
            assert_eq!(forest(n, k).unify(&one).unwrap(), planted, "W({n},{k})");
        }
        assert_eq!(
            tree_poly_hat(n).unify(&one).unwrap(),
            int(n.pow(n as u32 - 1))
        );
        let s2 = s2_table(7);
        let fubini: i64 = (0..=n as usize)
            .map(|k| fact(k as i64) * s2[n as usize][k])
            .sum();
        assert_eq!(geometric(n).unify(&one).unwrap(), int(fubini), "p({n})");
    }
}

/// `[x^n] g^k` by Lagrange's formula `(k/n) [x^{n-k}] (x/f)^n`, with plain
/// vectors for the series arithmetic.
fn lagrange_coeff(f: &[Rational], n: usize, k: usize) -> Rational {
    let len = n + 1;
    let u: Vec<Rational> = (0..len)
        .map(|i| f.get(i + 1).cloned().unwrap_or_default())
        .collect();
    let mul = |a: &[Rational], b: &[Rational]| {
        let mut c = vec![Rational::default(); len];
        for i in 0..len {
            for j in 0..len - i {
                c[i + j] += &a[i] * &b[j];
            }
        }
        c
    };
    let mut inv = vec![Rational::default(); len];
    inv[0] = u[0].recip();
    for m in 1..len {
        let mut s = Rational::default();
        for j in 1..=m {
            s += &u[j] * &inv[m - j];
        }
        inv[m] = -s / &u[0];
    }
    let mut pw = vec![Rational::default(); len];
    pw[0] = Rational::from_integer(1.into());
    for _ in 0..n {
        pw = mul(&pw, &inv);
    }
    int(k as i64) / int(n as i64) * &pw[n - k]
}

#[test]
fn companion_values_match_lagrange_inversion() {
    let f = [
        int(0),
        int(2),
        rat(-1, 3),
        int(1),
        rat(5, 2),
        int(-1),
        rat(1, 3),
        int(4),
    ];
    let series = PowerSeries::new(f.to_vec());
    for n in 1..=7usize {
        for k in 1..=n {
            let expected = lagrange_coeff(&f, n, k) * int(fact(n as i64)) / int(fact(k as i64));
            assert_eq!(
                stirling_a_at(n as i64, k as i64, &series).unwrap(),
                expected,
                "A({n},{k})"
            );
        }
    }
}

#[test]
fn knuth_pittel_coefficients() {
    for n in 1..=7i64 {
        for k in 1..=n {
            assert!(knuth_pittel_coeff(n, k) >= int(0), "t({n},{k})");
        }
        assert_eq!(knuth_pittel_coeff(n, n), int(1));
        let from_poly = knuth_pittel(n).univariate_coeffs(stirpoly::T_VAR).unwrap();
        for k in 1..=n {
            assert_eq!(
                from_poly.get(k as usize).cloned().unwrap_or_default(),
                knuth_pittel_coeff(n, k)
            );
        }
    }
}

#[test]
fn binomial_reciprocity() {
    for n in 0..=8i64 {
        for k in 0..=8i64 {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(
                binomial(-n, k),
                sign * binomial(n + k - 1, k),
                "C(-{n},{k})"
            );
        }
    }
}
