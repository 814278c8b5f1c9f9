//! Polynomial identities among the families, each checked exactly over a
//! range of indices.

use stirpoly::derived::{
    comtet_companion, comtet_family, exponential_formula_check, forest_companion,
    idempotency_companion, involution_check, involution_poly, lah_signed,
};
use stirpoly::families::{
    bell, bell_at, complete_bell, fdb_poly, logarithmic, omega, potential, potential_hat,
    reciprocal_poly_hat, stirling1, stirling2, stirling_a, tree_poly_hat, Term,
};
use stirpoly::inversion::{lambda_classical, lambda_classical_ss, self_inverse};
use stirpoly::numbers::{binomial, factorial_q, falling_int, int, sign};
use stirpoly::random::{SeriesKind, SeriesRng};
use stirpoly::{x, MultiPoly, PowerSeries, Rational, Var};

fn sub(p: &MultiPoly, q: impl Fn(usize) -> MultiPoly) -> MultiPoly {
    p.compose_seq(q).unwrap()
}

#[test]
fn bell_derivative_identity() {
    for n in 1..=8i64 {
        for k in 1..=n {
            for j in 1..=(n - k + 1) {
                let lhs = bell(n, k).partial_derivative(j as Var);
                assert_eq!(
                    lhs,
                    bell(n - j, k - 1).scale(&binomial(n, j)),
                    "({n},{k},{j})"
                );
            }
        }
    }
}

#[test]
fn higher_coefficients_enter_linearly() {
    for n in 2..=8i64 {
        for k in 1..n {
            let mut rhs = MultiPoly::zero();
            for i in 1..=k {
                for j in 0..=(n - k - 1) {
                    let term = &x(1).pow(j).unwrap() * &bell(n - j - i - 1, n - j - k - 1);
                    rhs += (&x(i as Var + 1) * &term).scale(&binomial(n - j - 1, i));
                }
            }
            assert_eq!(bell(n, n - k), rhs, "({n},{k})");
        }
    }
}

#[test]
fn companions_represent_each_other() {
    let a1 = |j: usize| stirling_a(j as i64, 1);
    for n in 1..=7i64 {
        for k in 1..=n {
            assert_eq!(
                sub(&bell(n, k), a1),
                stirling_a(n, k),
                "A = B∘A_1 at ({n},{k})"
            );
            assert_eq!(
                sub(&stirling_a(n, k), a1),
                bell(n, k),
                "B = A∘A_1 at ({n},{k})"
            );
        }
    }
}

#[test]
fn bertrand_and_logarithmic_sums() {
    for n in 1..=8i64 {
        for k in 0..=n {
            let s: MultiPoly = (0..=k)
                .map(|j| potential(n, j).scale(&(sign(k - j) * binomial(k, j))))
                .sum();
            assert_eq!(s.scale(&factorial_q(k as u64).recip()), bell(n, k));
        }
        let log: MultiPoly = (1..=n)
            .map(|j| potential(n, j).scale(&(sign(j - 1) * binomial(n, j) / int(j))))
            .sum();
        assert_eq!(log, logarithmic(n), "L_{n}");
    }
}

#[test]
fn convolution_identities() {
    for n in 0..=7i64 {
        for r in -2..=3i64 {
            for s in -2..=3i64 {
                let rhs: MultiPoly = (0..=n)
                    .map(|k| {
                        (&potential_hat(n - k, r) * &potential_hat(k, s)).scale(&binomial(n, k))
                    })
                    .sum();
                assert_eq!(potential_hat(n, r + s), rhs, "hat ({n},{r},{s})");
                let rhs: MultiPoly = (0..=n)
                    .map(|k| (&potential(n - k, r) * &potential(k, s)).scale(&binomial(n, k)))
                    .sum();
                assert_eq!(potential(n, r + s), rhs, "plain ({n},{r},{s})");
                if r >= 0 && s >= 0 {
                    let rhs: MultiPoly = (0..=n)
                        .map(|k| (&bell(n - k, r) * &bell(k, s)).scale(&binomial(n, k)))
                        .sum();
                    assert_eq!(
                        bell(n, r + s).scale(&binomial(r + s, r)),
                        rhs,
                        "bell ({n},{r},{s})"
                    );
                }
            }
        }
    }
}

#[test]
fn bell_and_companion_through_potentials() {
    let shifted = |j: Var| Some(x(j + 1).scale(&int(j as i64 + 1).recip()));
    for n in 1..=7i64 {
        for k in 1..=n {
            let b = potential_hat(n - k, k)
                .substitute(shifted)
                .unwrap()
                .scale(&binomial(n, k));
            assert_eq!(b, bell(n, k), "B ({n},{k})");
            let r: Vec<MultiPoly> = (0..=n)
                .map(|j| reciprocal_poly_hat(j).substitute(shifted).unwrap())
                .collect();
            let a = potential_hat(n - k, n)
                .substitute(|v| Some(r[v as usize].clone()))
                .unwrap();
            assert_eq!(
                a.scale(&binomial(n - 1, k - 1)),
                stirling_a(n, k),
                "A ({n},{k})"
            );
        }
    }
}

#[test]
fn multiplication_rules() {
    let r_hat = |j: usize| reciprocal_poly_hat(j as i64);
    for n in 0..=6i64 {
        for r in -2..=2i64 {
            for s in -2..=2i64 {
                let rhs = potential_hat(n, r)
                    .substitute(|v| Some(potential_hat(v as i64, s)))
                    .unwrap();
                assert_eq!(potential_hat(n, r * s), rhs, "({n},{r},{s})");
            }
            let rhs = potential_hat(n, r)
                .substitute(|v| Some(r_hat(v as usize)))
                .unwrap();
            assert_eq!(potential_hat(n, -r), rhs);
        }
        let back = reciprocal_poly_hat(n)
            .substitute(|v| Some(r_hat(v as usize)))
            .unwrap();
        assert_eq!(back, x(n as Var), "R^_{n} self-inverse");
        for r in 0..=3i64 {
            for s in 0..=3i64 {
                // B_{0,0} = 1 while B_{0,r}(B_{#,0}) = 0 for r >= 1
                if n == 0 && s == 0 && r >= 1 {
                    continue;
                }
                let c = factorial_q(r as u64) * factorial_q(s as u64).pow(r as i32)
                    / factorial_q((r * s) as u64);
                let rhs = sub(&bell(n, r), |j| bell(j as i64, s)).scale(&c);
                assert_eq!(bell(n, r * s), rhs, "B ({n},{r},{s})");
            }
        }
    }
}

#[test]
fn substitution_lemma_with_exp_and_log() {
    let expm = PowerSeries::expm(8);
    let logm = PowerSeries::logm(8);
    let bn = |j: usize| complete_bell(j as i64);
    let ln = |j: usize| logarithmic(j as i64);
    let mut rng = SeriesRng::new(11);
    let f = rng.series(8, SeriesKind::Any);
    for n in 0..=6i64 {
        for k in 0..=n {
            let s2: MultiPoly = (k..=n).map(|j| bell(n, j).scale(&stirling2(j, k))).sum();
            assert_eq!(sub(&bell(n, k), bn), s2, "expm ({n},{k})");
            let s1: MultiPoly = (k..=n).map(|j| bell(n, j).scale(&stirling1(j, k))).sum();
            assert_eq!(sub(&bell(n, k), ln), s1, "logm ({n},{k})");
            let lemma: MultiPoly = (k..=n)
                .map(|j| bell(n, j).scale(&bell_at(j, k, &logm).unwrap()))
                .sum();
            assert_eq!(sub(&bell(n, k), |j| fdb_poly(&logm, j as i64)), lemma);
            if k >= 1 {
                let alt: MultiPoly = (1..=k)
                    .map(|j| {
                        let scaled = sub(&complete_bell(n), |i| x(i as Var).scale(&int(j)));
                        scaled.scale(&(sign(k - j) * binomial(k, j)))
                    })
                    .sum();
                assert_eq!(
                    sub(&bell(n, k), bn),
                    alt.scale(&factorial_q(k as u64).recip())
                );
            }
        }
        // F_n ∘ G_# = sum_j F^g_j(0) B_{n,j} with g = expm
        let fg = f.compose(&expm.truncate(8)).unwrap();
        let rhs: MultiPoly = (0..=n)
            .map(|j| bell(n, j).scale(&fg.taylor(j as usize)))
            .sum();
        assert_eq!(sub(&fdb_poly(&f, n), |j| fdb_poly(&expm, j as i64)), rhs);
        for k in 0..=4i64 {
            let lhs = potential(n, k).compose_seq(bn).unwrap();
            let rhs = sub(&complete_bell(n), |i| x(i as Var).scale(&int(k)));
            assert_eq!(lhs, rhs, "P_(n,k)(B) ({n},{k})");
        }
    }
}

#[test]
fn power_theorems_through_omega() {
    let mut rng = SeriesRng::new(5);
    let s = rng.series(8, SeriesKind::Invertible);
    let f = Term::series(s) * Term::Phi;
    let om: Vec<MultiPoly> = (0..=6).map(|j| omega(j, &f).unwrap()).collect();
    for n in 1..=5usize {
        for k in 1..=n {
            let (ni, ki) = (n as i64, k as i64);
            let kf = factorial_q(k as u64);
            let inv_pow = omega(n, &f.clone().inverse().pow(k)).unwrap();
            let rhs = sub(&stirling_a(ni, ki), |j| om[j].clone()).scale(&kf);
            assert_eq!(inv_pow, rhs, "inverse power (i) ({n},{k})");
            let r: Vec<MultiPoly> = (0..=n)
                .map(|j| {
                    reciprocal_poly_hat(j as i64)
                        .substitute(|v| Some(om[v as usize + 1].scale(&int(v as i64 + 1).recip())))
                        .unwrap()
                })
                .collect();
            let rhs = potential_hat(ni - ki, ni)
                .substitute(|v| Some(r[v as usize].clone()))
                .unwrap()
                .scale(&(kf.clone() * binomial(ni - 1, ki - 1)));
            assert_eq!(inv_pow, rhs, "inverse power (ii) ({n},{k})");

            let pow = omega(n, &f.clone().pow(k)).unwrap();
            let rhs = sub(&bell(ni, ki), |j| om[j].clone()).scale(&kf);
            assert_eq!(pow, rhs, "power (i) ({n},{k})");
            let rhs = potential_hat(ni - ki, ki)
                .substitute(|v| Some(om[v as usize + 1].scale(&int(v as i64 + 1).recip())))
                .unwrap()
                .scale(&(kf * binomial(ni, ki)));
            assert_eq!(pow, rhs, "power (ii) ({n},{k})");
        }
    }
}

#[test]
fn omega_evaluates_to_taylor_coefficients() {
    let mut rng = SeriesRng::new(8);
    let phi = rng.series(8, SeriesKind::Invertible);
    let u = rng.series(8, SeriesKind::Unit);
    let term =
        (Term::series(u).reciprocal() * Term::Phi + Term::Phi.pow(2).scale(int(3))).derivative();
    let actual = term.eval(&phi).unwrap();
    for n in 0..=5usize {
        let p = omega(n, &term).unwrap_or_else(|e| panic!("{e}"));
        let v = p.evaluate(|j| phi.taylor(j as usize)).unwrap();
        assert_eq!(v, actual.taylor(n), "n={n}");
    }
}

#[test]
fn lah_structure() {
    for n in 1..=6i64 {
        for k in 1..=n {
            let rep = sub(&bell(n, k), |j| lah_signed(j as i64, 1));
            assert_eq!(rep, lah_signed(n, k), "B-representation ({n},{k})");
            let c = int(7) / int(2);
            let scaled = lah_signed(n, k)
                .substitute(|v| Some(x(v).scale(&c)))
                .unwrap();
            let expected = lah_signed(n, k).scale(&stirpoly::numbers::rpow(&c, -(n - k)));
            assert_eq!(scaled, expected, "homogeneity ({n},{k})");
        }
    }
    let involution_g = PowerSeries::new(vec![
        int(0),
        int(2),
        int(-1),
        Rational::new(1.into(), 3.into()),
        int(1),
    ]);
    assert!(involution_check(&involution_g, 4).unwrap());
    assert!(self_inverse(|n| involution_poly(&involution_g, n).unwrap(), 1, 4).unwrap());
}

#[test]
fn forests_from_trees() {
    let trees = |j: usize| tree_poly_hat(j as i64);
    for n in 1..=6i64 {
        for k in 1..=n {
            let a = sub(&stirling_a(n, k), trees);
            assert_eq!(a, forest_companion(n, k), "A(T) ({n},{k})");
            let shifted = stirling_a(n, k)
                .substitute(|v| {
                    Some(if v == 0 {
                        MultiPoly::zero()
                    } else {
                        x(v - 1).scale(&int(v as i64))
                    })
                })
                .unwrap();
            assert_eq!(
                shifted,
                idempotency_companion(n, k),
                "A(X0, 2X1, ...) ({n},{k})"
            );
        }
    }
}

#[test]
fn comtet_values_and_companion() {
    let fam = comtet_family();
    let one = int(1);
    for n in 0..=7i64 {
        for k in 0..=n {
            let q_bar = fam.q_bar(n, k).unwrap();
            assert_eq!(q_bar, comtet_companion(n, k), "companion ({n},{k})");
            if n <= 6 {
                assert_eq!(
                    q_bar.unify(&one).unwrap(),
                    sign(n - k) * stirling2(n, k),
                    "({n},{k})"
                );
            }
        }
    }
}

#[test]
fn lambda_routes_agree() {
    for n in 1..=7i64 {
        assert_eq!(lambda_classical(n), stirling_a(n, 1), "n={n}");
        assert_eq!(lambda_classical_ss(n), stirling_a(n, 1), "n={n}");
    }
}

#[test]
fn exponential_formula() {
    let mut rng = SeriesRng::new(3);
    for _ in 0..3 {
        let f = rng.series(7, SeriesKind::F0);
        assert!(exponential_formula_check(&f, 7).unwrap());
    }
}

#[test]
fn factorial_powers_sum_to_power() {
    for r in 0..=6i64 {
        let k = 5i64;
        let s: Rational = (0..=r)
            .map(|j| falling_int(k, j as u64) * stirling2(r, j))
            .sum();
        assert_eq!(s, int(k.pow(r as u32)));
    }
}
