//! Named identity suites with structured reports.
//!
//! Every suite is exact; a failure carries its witness and both sides as text.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::json;

use crate::derived::{
    brep_check_recurrence, brep_check_rowwise, comtet, comtet_family, comtet_n_minus_4,
    comtet_via_stirling, cycle_family, cycle_indicator, cycle_indicator_partition_sum, forest,
    forest_family, forest_via_trees, idempotency, idempotency_family, idempotency_via_bell,
    lah_signed, lah_signed_family, lah_unsigned, lah_unsigned_family, lah_unsigned_partition_sum,
    BRepFamily,
};
use crate::error::{Error, Result};
use crate::extended::{
    basic_potential_reciprocity, bell_ext, bell_via_assoc, comtet_thm_c, general_reciprocity,
    melzak, potential_reciprocity, reciprocity_check, schloemilch_schlaefli,
    schloemilch_schlaefli_general, schur_jabotinsky,
};
use crate::families::{
    bell, bell_at, bell_partition_sum, fdb_poly, first_composition_rule_check,
    first_composition_rule_check_1case, geometric, invert_via_stirling, jabotinsky_bell,
    jabotinsky_stirling, potential, stirling_a, stirling_a_partition_sum, stirling_a_via_assoc,
    tree_poly_hat,
};
use crate::inversion::{
    binomial_identity_suite, both_or_none_check, i_hat, knuth_pittel, knuth_pittel_series,
    knuth_pittel_via_bell, lambda_apply_check, lambda_classical, lambda_classical_ss,
    lambda_general, lambda_round_trip, lambda_special_1, lambda_special_2, mullin_rota,
    round_trip_thm_f, self_inverse, BinomialSeq, FormCase, SeriesForm,
};
use crate::numbers::{factorial_q, int};
use crate::polyring::{t, x, MultiPoly, Rational, Var, T_VAR};
use crate::random::{SeriesKind, SeriesRng};
use crate::series::{LaurentPoly1, PowerSeries};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a suite: how many checks ran and which failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn new(suite: &str) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    /// Records a check; the sides are only rendered on failure.
    pub fn record<L, R>(&mut self, witness: impl Into<String>, ok: bool, lhs: L, rhs: R)
    where
        L: FnOnce() -> String,
        R: FnOnce() -> String,
    {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                witness: witness.into(),
                lhs: lhs(),
                rhs: rhs(),
            });
        }
    }

    pub fn poly_eq(&mut self, witness: impl Into<String>, lhs: &MultiPoly, rhs: &MultiPoly) {
        self.record(witness, lhs == rhs, || lhs.to_string(), || rhs.to_string());
    }

    pub fn value_eq<T: PartialEq + fmt::Display>(
        &mut self,
        witness: impl Into<String>,
        lhs: T,
        rhs: T,
    ) {
        self.record(witness, lhs == rhs, || lhs.to_string(), || rhs.to_string());
    }

    /// A predicate check; errors count as failures.
    pub fn holds(&mut self, witness: impl Into<String>, r: Result<bool>) {
        match r {
            Ok(ok) => self.record(witness, ok, || "false".into(), || "true".into()),
            Err(e) => self.record(witness, false, || format!("error: {e}"), || "true".into()),
        }
    }

    /// Compares two fallible polynomial computations.
    pub fn poly_eq_res(
        &mut self,
        witness: impl Into<String>,
        lhs: Result<MultiPoly>,
        rhs: Result<MultiPoly>,
    ) {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => self.poly_eq(witness, &l, &r),
            (l, r) => {
                let show = |v: Result<MultiPoly>| match v {
                    Ok(p) => p.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                self.record(witness, false, || show(l), || show(r));
            }
        }
    }

    /// Folds another report in, prefixing its witnesses with its suite name.
    pub fn absorb(&mut self, other: VerifyReport) {
        self.checks += other.checks;
        for f in other.failures {
            self.failures.push(Failure {
                witness: format!("{}: {}", other.suite, f.witness),
                ..f
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "witness": f.witness,
                "lhs": f.lhs,
                "rhs": f.rhs,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {} checks, {} failures ({status})",
            self.suite,
            self.checks,
            self.failures.len()
        )?;
        for fl in &self.failures {
            write!(
                f,
                "\n  at {}\n    lhs = {}\n    rhs = {}",
                fl.witness, fl.lhs, fl.rhs
            )?;
        }
        Ok(())
    }
}

/// Parameters shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: i64,
    pub seed: u64,
    /// index range `-range..=range` for reciprocity
    pub range: i64,
    /// top polynomial degree for Melzak's formula
    pub deg: i64,
    pub m: i64,
    pub k: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 6,
            seed: DEFAULT_SEED,
            range: 6,
            deg: 5,
            m: 6,
            k: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    MultiRoute,
    PrintedValues,
    Reciprocity,
    LahSelfOrthogonality,
    Inversion,
    Composition,
    Binomial,
    Potential,
    Melzak,
    NegativeControl,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 11] = [
        Suite::Orthogonality,
        Suite::MultiRoute,
        Suite::PrintedValues,
        Suite::Reciprocity,
        Suite::LahSelfOrthogonality,
        Suite::Inversion,
        Suite::Composition,
        Suite::Binomial,
        Suite::Potential,
        Suite::Melzak,
        Suite::NegativeControl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::MultiRoute => "multi-route",
            Suite::PrintedValues => "printed-values",
            Suite::Reciprocity => "reciprocity",
            Suite::LahSelfOrthogonality => "lah-self-orthogonality",
            Suite::Inversion => "inversion",
            Suite::Composition => "composition",
            Suite::Binomial => "binomial",
            Suite::Potential => "potential",
            Suite::Melzak => "melzak",
            Suite::NegativeControl => "negative-control",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::NAMED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerifyReport {
    let n = cfg.max_n;
    match suite {
        Suite::Orthogonality => orthogonality(n),
        Suite::MultiRoute => multi_route(n, n, n),
        Suite::PrintedValues => printed_values(n),
        Suite::Reciprocity => reciprocity(cfg.range),
        Suite::LahSelfOrthogonality => lah_self_orthogonality(n, cfg.seed),
        Suite::Inversion => inversion(n, cfg.seed),
        Suite::Composition => composition(n, cfg.seed),
        Suite::Binomial => binomial(n, cfg.seed),
        Suite::Potential => potential_suite(n),
        Suite::Melzak => melzak_suite(cfg.deg, cfg.m, cfg.k, cfg.seed),
        Suite::NegativeControl => negative_control(n.max(4)),
        Suite::All => {
            let mut all = VerifyReport::new("all");
            for s in Suite::NAMED {
                all.absorb(run_suite(s, cfg));
            }
            all
        }
    }
}

fn nk(n: i64, k: i64) -> String {
    format!("(n={n}, k={k})")
}

/// `sum_j A_{n,j} B_{j,k} = δ_{n,k}` and the transposed product.
pub fn orthogonality(max_n: i64) -> VerifyReport {
    let mut r = VerifyReport::new("orthogonality");
    for n in 0..=max_n {
        for k in 0..=n {
            let delta = if n == k {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
            let ab: MultiPoly = (k..=n).map(|j| &stirling_a(n, j) * &bell(j, k)).sum();
            let ba: MultiPoly = (k..=n).map(|j| &bell(n, j) * &stirling_a(j, k)).sum();
            r.poly_eq(format!("A*B {}", nk(n, k)), &ab, &delta);
            r.poly_eq(format!("B*A {}", nk(n, k)), &ba, &delta);
        }
    }
    r
}

/// Independent routes for the same family agree.
pub fn multi_route(b_max: i64, a_max: i64, c_max: i64) -> VerifyReport {
    let mut r = VerifyReport::new("multi-route");
    for n in 0..=b_max {
        for k in 0..=n {
            r.poly_eq(
                format!("B recurrence/partitions {}", nk(n, k)),
                &bell(n, k),
                &bell_partition_sum(n as usize, k as usize),
            );
        }
    }
    for n in 0..=a_max {
        for k in 0..=n {
            r.poly_eq(
                format!("B recurrence/associate {}", nk(n, k)),
                &bell(n, n - k),
                &bell_via_assoc(n, k),
            );
        }
    }
    for n in 1..=a_max {
        for k in 1..=n {
            let a = stirling_a(n, k);
            r.poly_eq(
                format!("A recurrence/associate sum {}", nk(n, k)),
                &a,
                &stirling_a_via_assoc(n, k),
            );
            r.poly_eq(
                format!("A recurrence/partitions {}", nk(n, k)),
                &a,
                &stirling_a_partition_sum(n as usize, k as usize),
            );
        }
    }
    for n in 0..=c_max {
        for k in 0..=n {
            r.poly_eq(
                format!("C recurrence/A route {}", nk(n, k)),
                &comtet(n, k),
                &comtet_via_stirling(n, k),
            );
        }
    }
    let c62: MultiPoly =
        "31*X0^2*X1^4 + 146*X0^3*X1^2*X2 + 34*X0^4*X2^2 + 57*X0^4*X1*X3 + 6*X0^5*X4"
            .parse()
            .expect("valid polynomial");
    r.poly_eq("C_{6,2} printed", &comtet(6, 2), &c62);
    for n in 5..=9 {
        r.poly_eq(
            format!("C_(n,n-4) closed form n={n}"),
            &comtet(n, n - 4),
            &comtet_n_minus_4(n),
        );
    }
    let side = b_max.min(7);
    for n in 0..=side {
        for k in 0..=n {
            let (nu, ku) = (n as usize, k as usize);
            r.poly_eq(
                format!("Z recurrence/partitions {}", nk(n, k)),
                &cycle_indicator(n, k),
                &cycle_indicator_partition_sum(nu, ku),
            );
            r.poly_eq(
                format!("L+ recurrence/partitions {}", nk(n, k)),
                &lah_unsigned(n, k),
                &lah_unsigned_partition_sum(nu, ku),
            );
            r.poly_eq(
                format!("W recurrence/trees {}", nk(n, k)),
                &forest(n, k),
                &forest_via_trees(n, k),
            );
            r.poly_eq(
                format!("I recurrence/Bell {}", nk(n, k)),
                &idempotency(n, k),
                &idempotency_via_bell(n, k),
            );
        }
    }
    r
}

/// The Bell matrix for `-4 <= n, k <= 4`, row `n`, column `k`.
const BELL_MATRIX: [[&str; 9]; 9] = [
    ["X1^-4", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["6*X2*X1^-5", "X1^-3", "0", "0", "0", "0", "0", "0", "0"],
    [
        "15*X2^2*X1^-6 - 4*X3*X1^-5",
        "3*X2*X1^-4",
        "X1^-2",
        "0",
        "0",
        "0",
        "0",
        "0",
        "0",
    ],
    [
        "15*X2^3*X1^-7 - 10*X3*X2*X1^-6 + X4*X1^-5",
        "3*X2^2*X1^-5 - X3*X1^-4",
        "X2*X1^-3",
        "X1^-1",
        "0",
        "0",
        "0",
        "0",
        "0",
    ],
    ["0", "0", "0", "0", "1", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "X1", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "X2", "X1^2", "0", "0"],
    ["0", "0", "0", "0", "0", "X3", "3*X1*X2", "X1^3", "0"],
    [
        "0",
        "0",
        "0",
        "0",
        "0",
        "X4",
        "3*X2^2 + 4*X1*X3",
        "6*X1^2*X2",
        "X1^4",
    ],
];

/// Reference values: the Bell matrix, named polynomials and unifications.
pub fn printed_values(max_n: i64) -> VerifyReport {
    let mut r = VerifyReport::new("printed-values");
    let p = |s: &str| s.parse::<MultiPoly>().expect("valid polynomial");
    for (i, row) in BELL_MATRIX.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let (n, k) = (i as i64 - 4, j as i64 - 4);
            r.poly_eq(format!("B {}", nk(n, k)), &bell_ext(n, k), &p(s));
        }
    }
    r.poly_eq("P_{2,2}", &potential(2, 2), &p("2*X1^2 + 2*X2"));
    let l5 = [
        "-210*X2^4*X1^-8 + 120*X3*X2^2*X1^-7 - 30*X4*X2*X1^-6",
        "-270*X2^3*X1^-6 + 40*X3*X2*X1^-5 - 10*X4*X1^-4",
        "-120*X2^2*X1^-4",
        "-20*X2*X1^-2",
        "-1",
    ];
    for (k, s) in l5.iter().enumerate() {
        r.poly_eq(
            format!("L {}", nk(5, k as i64 + 1)),
            &lah_signed(5, k as i64 + 1),
            &p(s),
        );
    }
    for n in 1..=max_n {
        let rhs = x(n as Var).scale(&factorial_q(n as u64 - 1));
        r.poly_eq(format!("Z {}", nk(n, 1)), &cycle_indicator(n, 1), &rhs);
    }
    r.poly_eq("t_2", &knuth_pittel(2), &p("3*t + t^2"));
    r.poly_eq("t_3", &knuth_pittel(3), &p("17*t + 9*t^2 + t^3"));
    let one = Rational::one();
    let unify = |q: MultiPoly| q.unify(&one).expect("polynomial");
    r.value_eq("s2(4,2)", unify(bell(4, 2)), int(7));
    r.value_eq("c(4,2) via Z", unify(cycle_indicator(4, 2)), int(11));
    r.value_eq("c(4,2) via C", unify(comtet(4, 2)), int(11));
    for n in 1..=max_n {
        r.value_eq(
            format!("T^_{n} at 1"),
            unify(tree_poly_hat(n)),
            int(n).pow(n as i32 - 1),
        );
    }
    r.value_eq("p(3)", unify(geometric(3)), int(13));
    r
}

/// `A_{n,k} = (-1)^{n-k} B_{-k,-n}` and its analogue for Z, W, L+, L, C.
pub fn reciprocity(range: i64) -> VerifyReport {
    let mut r = VerifyReport::new("reciprocity");
    for n in -range..=range {
        for k in -range..=range {
            r.holds(format!("A/B {}", nk(n, k)), Ok(reciprocity_check(n, k)));
        }
    }
    let fams = [
        ("Z", cycle_family()),
        ("W", forest_family()),
        ("L+", lah_unsigned_family()),
        ("L", lah_signed_family()),
        ("C", comtet_family()),
    ];
    for (name, fam) in &fams {
        for n in -range..=range {
            for k in -range..=range {
                r.holds(
                    format!("{name} {}", nk(n, k)),
                    general_reciprocity(fam, n, k),
                );
            }
        }
    }
    let lah = lah_signed_family();
    for n in -range..=range {
        for k in -range..=range {
            let lhs = lah.q(n, k);
            let rhs = lah.q(-k, -n).map(|p| p.scale(&crate::numbers::sign(n - k)));
            r.poly_eq_res(format!("L self-reciprocity {}", nk(n, k)), lhs, rhs);
        }
    }
    r
}

/// `sum_j L_{n,j} L_{j,k} = δ_{n,k}`, also after substituting `Φ_#(h)`.
pub fn lah_self_orthogonality(max_n: i64, seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("lah-self-orthogonality");
    for n in 0..=max_n {
        for k in 0..=n {
            let s: MultiPoly = (k..=n).map(|j| &lah_signed(n, j) * &lah_signed(j, k)).sum();
            let delta = if n == k {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
            r.poly_eq(format!("L*L {}", nk(n, k)), &s, &delta);
        }
    }
    let mut rng = SeriesRng::new(seed);
    let h = rng.series(max_n.min(5) as usize + 1, SeriesKind::Invertible);
    let hs: Vec<MultiPoly> = (0..=max_n.min(5) + 1).map(|j| fdb_poly(&h, j)).collect();
    let sub = |p: MultiPoly| p.compose_seq(|j| hs[j].clone());
    for n in 0..=max_n.min(5) {
        for k in 0..=n {
            let s: Result<MultiPoly> = (k..=n)
                .map(|j| Ok(&sub(lah_signed(n, j))? * &sub(lah_signed(j, k))?))
                .sum();
            let delta = if n == k {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
            r.poly_eq_res(format!("L(H) * L(H) {}", nk(n, k)), s, Ok(delta));
        }
    }
    r
}

fn random_form(rng: &mut SeriesRng, case: FormCase, order: usize) -> SeriesForm {
    let kind = match case {
        FormCase::Unit => SeriesKind::Unit,
        FormCase::Invertible => SeriesKind::Invertible,
    };
    let a = rng.series(order, kind);
    let phi = rng.series(order, SeriesKind::Invertible);
    SeriesForm::new(a, phi).expect("generated to fit the case")
}

/// Series reversion, classical and generalized Lagrange inversion.
pub fn inversion(max_n: i64, seed: u64) -> VerifyReport {
    inversion_with(20, 8, max_n, max_n.min(4), seed)
}

/// [`inversion`] with explicit sizes: `trials` random series of `order`,
/// `Λ` up to `lambda_n`, generalized `Λ` and `Î` up to `general_n`.
pub fn inversion_with(
    trials: usize,
    order: usize,
    lambda_n: i64,
    general_n: i64,
    seed: u64,
) -> VerifyReport {
    let mut r = VerifyReport::new("inversion");
    let mut rng = SeriesRng::new(seed);
    let id = PowerSeries::id(order);
    for trial in 0..trials {
        let f = rng.series(order, SeriesKind::Invertible);
        let w = format!("trial={trial}");
        match f.invert() {
            Ok(g) => {
                let left = g.compose(&f).map_err(Error::from);
                let right = f.compose(&g).map_err(Error::from);
                r.holds(format!("inv(f)∘f {w}"), left.map(|s| s == id));
                r.holds(format!("f∘inv(f) {w}"), right.map(|s| s == id));
                r.holds(
                    format!("inverse via A_(n,1) {w}"),
                    invert_via_stirling(&f).map(|s| s == g).map_err(Error::from),
                );
            }
            Err(e) => r.holds(format!("invert {w}"), Err(e.into())),
        }
    }
    r.holds(
        "Λ self-inverse",
        self_inverse(lambda_classical, 1, lambda_n),
    );
    for n in 1..=lambda_n {
        r.poly_eq(
            format!("Λ associate/Bell n={n}"),
            &lambda_classical(n),
            &lambda_classical_ss(n),
        );
    }
    for s in 1..=3usize {
        let c: Vec<Rational> = std::iter::once(Rational::one())
            .chain((1..=9).map(|_| rng.rational()))
            .collect();
        r.holds(
            format!("power-shaped round trip s={s}"),
            round_trip_thm_f(&c, s, 9),
        );
    }
    let cases = [FormCase::Unit, FormCase::Invertible];
    for from_case in cases {
        for to_case in cases {
            let from = random_form(&mut rng, from_case, general_n as usize + 6);
            let to = random_form(&mut rng, to_case, general_n as usize + 6);
            let w = format!("{from_case:?}->{to_case:?}");
            r.holds(
                format!("general Λ round trip {w}"),
                lambda_round_trip(&from, &to, general_n),
            );
            let f = rng.series(general_n as usize + 6, SeriesKind::Invertible);
            r.holds(
                format!("general Λ on constants {w}"),
                lambda_apply_check(&f, &from, &to, general_n),
            );
        }
    }
    let phi = rng.series(general_n as usize + 6, SeriesKind::Invertible);
    let psi = rng.series(general_n as usize + 6, SeriesKind::Invertible);
    let one = PowerSeries::constant(Rational::one(), general_n as usize + 6);
    let idf = PowerSeries::id(general_n as usize + 6);
    let (u_phi, u_psi) = (
        SeriesForm::new(one.clone(), phi.clone()).expect("unit form"),
        SeriesForm::new(one, psi.clone()).expect("unit form"),
    );
    let (i_phi, i_psi) = (
        SeriesForm::new(idf.clone(), phi.clone()).expect("invertible form"),
        SeriesForm::new(idf, psi.clone()).expect("invertible form"),
    );
    for n in 1..=general_n {
        r.poly_eq_res(
            format!("Λ(1,φ|1,ψ) closed form n={n}"),
            lambda_special_1(n, &phi, &psi),
            lambda_general(n, &u_phi, &u_psi),
        );
        r.poly_eq_res(
            format!("Λ(x,φ|x,ψ) closed form n={n}"),
            lambda_special_2(n, &phi, &psi),
            lambda_general(n, &i_phi, &i_psi),
        );
    }
    for s in 1..=3 {
        r.holds(
            format!("Î_(n,{s}n) self-inverse"),
            self_inverse(|n| i_hat(n, s * n), 0, general_n),
        );
    }
    r
}

fn random_laurent(rng: &mut SeriesRng) -> LaurentPoly1 {
    LaurentPoly1::new((-2..=3).map(|e| (e, rng.rational())))
}

/// First composition rule, Jabotinsky, Pourchet, Faà di Bruno and chain rule.
pub fn composition(max_n: i64, seed: u64) -> VerifyReport {
    composition_with(3, max_n, seed)
}

pub fn composition_with(trials: usize, max_n: i64, seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("composition");
    let mut rng = SeriesRng::new(seed);
    let order = max_n as usize + 2;
    let show = |v: &[i64]| format!("{v:?}");
    for trial in 0..trials {
        let w = format!("trial={trial}");
        let f = rng.series(order, SeriesKind::Any);
        let g = rng.series(order, SeriesKind::F0);
        match first_composition_rule_check(&f, &g, max_n) {
            Ok(bad) => r.record(
                format!("first rule 0-case {w}"),
                bad.is_empty(),
                || show(&bad),
                || "[]".into(),
            ),
            Err(e) => r.holds(format!("first rule 0-case {w}"), Err(e)),
        }
        let fl = random_laurent(&mut rng);
        let gu = rng.series(order, SeriesKind::Unit);
        match first_composition_rule_check_1case(&fl, &gu, max_n) {
            Ok(bad) => r.record(
                format!("first rule 1-case {w}"),
                bad.is_empty(),
                || show(&bad),
                || "[]".into(),
            ),
            Err(e) => r.holds(format!("first rule 1-case {w}"), Err(e)),
        }

        let (f0, g0) = (
            rng.series(order, SeriesKind::F0),
            rng.series(order, SeriesKind::F0),
        );
        let (fi, gi) = (
            rng.series(order, SeriesKind::Invertible),
            rng.series(order, SeriesKind::Invertible),
        );
        for n in 0..=max_n {
            for k in 0..=n {
                r.holds(
                    format!("Jabotinsky B {w} {}", nk(n, k)),
                    jabotinsky_bell(&f0, &g0, n, k),
                );
                r.holds(
                    format!("Jabotinsky A {w} {}", nk(n, k)),
                    jabotinsky_stirling(&fi, &gi, n, k),
                );
            }
        }

        // Pourchet: D_φ^n(f)(0) = D^n(f ∘ inv(φ))(0)
        let big = 2 * max_n as usize + 2;
        let fp = rng.series(big, SeriesKind::Any);
        let phi = rng.series(big, SeriesKind::Invertible);
        let rhs = phi.invert().and_then(|pi| fp.compose(&pi));
        let mut d = fp.clone();
        for n in 0..=max_n {
            let wn = format!("Pourchet {w} n={n}");
            match &rhs {
                Ok(rhs) => r.value_eq(wn, d.taylor(0), rhs.taylor(n as usize)),
                Err(e) => r.holds(wn, Err(e.clone().into())),
            }
            match PowerSeries::lie_derive(&phi, &d) {
                Ok(next) => d = next,
                Err(e) => {
                    r.holds(format!("Pourchet {w}"), Err(e.into()));
                    break;
                }
            }
        }

        // Faà di Bruno at series level
        let ff = rng.series(order, SeriesKind::Any);
        let phi0 = rng.series(order, SeriesKind::F0);
        if let Ok(comp) = ff.compose(&phi0) {
            for n in 0..=max_n {
                let rhs: Result<Rational> = (0..=n)
                    .map(|k| Ok(ff.taylor(k as usize) * bell_at(n, k, &phi0)?))
                    .sum();
                match rhs {
                    Ok(rhs) => r.value_eq(format!("FdB {w} n={n}"), comp.taylor(n as usize), rhs),
                    Err(e) => r.holds(format!("FdB {w} n={n}"), Err(e)),
                }
            }
        }

        // chain rule in both cases
        let chain0 = f0.compose(&g0).map(|c| {
            let lhs = c.derive();
            let rhs = f0.derive().compose(&g0).map(|h| h.mul(&g0.derive()));
            (lhs, rhs)
        });
        if let Ok((lhs, Ok(rhs))) = chain0 {
            let o = lhs.order().min(rhs.order());
            r.record(
                format!("chain rule 0-case {w}"),
                lhs.truncate(o) == rhs.truncate(o),
                || lhs.to_string(),
                || rhs.to_string(),
            );
        } else {
            r.record(
                format!("chain rule 0-case {w}"),
                false,
                || "composition failed".into(),
                String::new,
            );
        }
        match (fl.compose(&gu), fl.derive().compose(&gu)) {
            (Ok(c), Ok(dfg)) => {
                let lhs = c.derive();
                let rhs = dfg.mul(&gu.derive());
                let o = lhs.order().min(rhs.order());
                r.record(
                    format!("chain rule 1-case {w}"),
                    lhs.truncate(o) == rhs.truncate(o),
                    || lhs.to_string(),
                    || rhs.to_string(),
                );
            }
            _ => r.record(
                format!("chain rule 1-case {w}"),
                false,
                || "composition failed".into(),
                String::new,
            ),
        }
    }
    r
}

fn identity_checks(r: &mut VerifyReport, label: &str, seq: &BinomialSeq, max_n: usize) {
    r.holds(format!("{label} is binomial"), Ok(seq.is_binomial()));
    r.holds(
        format!("{label} convolution"),
        Ok(seq.satisfies_convolution()),
    );
    match binomial_identity_suite(seq, max_n) {
        Ok(checks) => {
            for c in checks {
                let w = match c.k {
                    Some(k) => format!("{label} {} {}", c.name, nk(c.n, k)),
                    None => format!("{label} {} n={}", c.name, c.n),
                };
                r.poly_eq(w, &c.lhs, &c.rhs);
            }
        }
        Err(e) => r.holds(format!("{label} identities"), Err(e)),
    }
}

/// Substitution identities, connection coefficients, both-or-none and
/// Knuth–Pittel routes.
pub fn binomial(max_n: i64, seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("binomial");
    let mut rng = SeriesRng::new(seed);
    let n = max_n.max(1) as usize;
    let order = n + 2;
    let mut gens = vec![
        ("id".to_string(), PowerSeries::id(order)),
        ("logm".to_string(), PowerSeries::logm(order)),
        ("expm".to_string(), PowerSeries::expm(order)),
    ];
    for i in 0..2 {
        gens.push((
            format!("random{i}"),
            rng.series(order, SeriesKind::Invertible),
        ));
    }
    let mut seqs = Vec::new();
    for (label, phi) in &gens {
        match BinomialSeq::from_phi(phi, n) {
            Ok(seq) => {
                identity_checks(&mut r, label, &seq, n);
                seqs.push((label.clone(), seq));
            }
            Err(e) => r.holds(format!("{label} sequence"), Err(e)),
        }
    }
    for (i, (lf, f)) in seqs.iter().enumerate() {
        let (lg, g) = &seqs[(i + 1) % seqs.len()];
        match mullin_rota(f, g) {
            Ok(mr) => {
                r.holds(format!("Mullin-Rota {lf}/{lg} connects"), Ok(mr.connects));
                r.holds(format!("Mullin-Rota {lf}/{lg} binomial"), Ok(mr.h_binomial));
            }
            Err(e) => r.holds(format!("Mullin-Rota {lf}/{lg}"), Err(e)),
        }
    }
    let mut a: Vec<Rational> = vec![Rational::zero(), rng.nonzero()];
    a.extend((2..=n).map(|_| rng.rational()));
    for (label, g) in &seqs {
        match both_or_none_check(g, &a) {
            Ok(b) => {
                r.holds(format!("both-or-none {label}"), Ok(b.holds()));
                r.holds(format!("both-or-none {label} binomial"), Ok(b.f_binomial));
            }
            Err(e) => r.holds(format!("both-or-none {label}"), Err(e)),
        }
    }
    // g_n = (t + 1)^n is not binomial, so neither is the transfer
    let shifted = BinomialSeq::new(
        (0..=n as i64)
            .map(|j| (&t() + &MultiPoly::one()).pow(j).expect("nonnegative"))
            .collect(),
    );
    match both_or_none_check(&shifted, &a) {
        Ok(b) => {
            r.holds("both-or-none (t+1)^n", Ok(b.holds()));
            r.holds("both-or-none (t+1)^n not binomial", Ok(!b.f_binomial));
        }
        Err(e) => r.holds("both-or-none (t+1)^n", Err(e)),
    }
    match knuth_pittel_series(n) {
        Ok(seq) => {
            for j in 0..=max_n {
                r.poly_eq(
                    format!("Knuth-Pittel sum/series n={j}"),
                    &knuth_pittel(j),
                    seq.get(j as usize),
                );
                r.poly_eq(
                    format!("Knuth-Pittel sum/Bell n={j}"),
                    &knuth_pittel(j),
                    &knuth_pittel_via_bell(j),
                );
            }
        }
        Err(e) => r.holds("Knuth-Pittel series", Err(e)),
    }
    r
}

/// Schlömilch–Schläfli, potential reciprocity, Schur–Jabotinsky and the
/// negative-index extension of potential polynomials.
pub fn potential_suite(max_n: i64) -> VerifyReport {
    let mut r = VerifyReport::new("potential");
    for n in 1..=max_n {
        for k in 0..n {
            r.poly_eq(
                format!("Schloemilch-Schlaefli {}", nk(n, k)),
                &schloemilch_schlaefli(n, k),
                &stirling_a(n, n - k),
            );
        }
    }
    let fams: [(&str, BRepFamily); 5] = [
        ("Z", cycle_family()),
        ("W", forest_family()),
        ("L", lah_signed_family()),
        ("C", comtet_family()),
        ("I", idempotency_family()),
    ];
    for (name, fam) in &fams {
        for n in 1..=max_n {
            for k in 0..n {
                r.holds(
                    format!("generalized SS {name} {}", nk(n, k)),
                    schloemilch_schlaefli_general(fam, n, k),
                );
            }
        }
    }
    for n in 1..=max_n {
        for k in -3..=n {
            r.holds(
                format!("potential reciprocity {}", nk(n, k)),
                potential_reciprocity(n, k),
            );
        }
        for k in 0..=4 {
            r.holds(
                format!("P_(n,-k) = P_(n,k)(R) {}", nk(n, k)),
                basic_potential_reciprocity(n, k),
            );
        }
    }
    let order = max_n as usize + 6;
    let fns = [
        ("logm", PowerSeries::logm(order)),
        ("expm", PowerSeries::expm(order)),
        ("x/(1-x)", PowerSeries::geometric_x(order)),
    ];
    for (name, phi) in &fns {
        for n in 1..=max_n {
            for k in -3..=n {
                let w = format!("Schur-Jabotinsky {name} {}", nk(n, k));
                match schur_jabotinsky(phi, n, k) {
                    Ok(sj) => r.record(
                        w,
                        sj.holds(),
                        || format!("{} / {}", sj.a, sj.a_potential),
                        || format!("{}", &sj.b * int(k) / int(n)),
                    ),
                    Err(e) => r.holds(w, Err(e)),
                }
            }
        }
    }
    for n in 0..=max_n.min(4) {
        for m in n..=6 {
            for k in 1..=4 {
                r.holds(
                    format!("negative-index extension (n={n}, m={m}, k={k})"),
                    comtet_thm_c(n, k, m),
                );
            }
        }
    }
    r
}

/// Melzak's formula for five random polynomials in `t` of degree up to `deg`.
pub fn melzak_suite(deg: i64, m: i64, k: i64, seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("melzak");
    let mut rng = SeriesRng::new(seed);
    for i in 0..5i64 {
        let d = (deg - i).max(0);
        let mut p = MultiPoly::zero();
        for e in 0..=d {
            let c = if e == d {
                rng.nonzero()
            } else {
                rng.rational()
            };
            p += t().pow(e).expect("nonnegative").scale(&c);
        }
        debug_assert!(p.variables().iter().all(|&v| v == T_VAR));
        for mm in d..=m.max(d) {
            for kk in 1..=k {
                r.holds(
                    format!("Melzak p{i} (deg={d}, m={mm}, k={kk})"),
                    melzak(&p, mm, kk),
                );
            }
        }
    }
    r
}

fn constant_family(n: i64, k: i64) -> MultiPoly {
    if (n == 0 && k == 0) || (1 <= k && k <= n) {
        MultiPoly::one()
    } else {
        MultiPoly::zero()
    }
}

/// The B-representability checkers reject the potential triangle and the
/// constant family, and accept genuine families.
pub fn negative_control(max_n: i64) -> VerifyReport {
    let mut r = VerifyReport::new("negative-control");
    let show = |v: Option<(i64, i64)>| format!("{v:?}");
    let showr = |v: Option<i64>| format!("{v:?}");
    let pot = brep_check_recurrence(potential, max_n);
    r.record(
        "potential, recurrence witness",
        pot == Some((2, 2)),
        || show(pot),
        || show(Some((2, 2))),
    );
    let cst = brep_check_rowwise(constant_family, max_n);
    r.record(
        "constant, Bell-equations witness",
        cst == Some(4),
        || showr(cst),
        || showr(Some(4)),
    );
    let cst_rec = brep_check_recurrence(constant_family, max_n);
    r.record(
        "constant, recurrence rejects",
        cst_rec.is_some(),
        || show(cst_rec),
        || "a witness".into(),
    );
    let pot_row = brep_check_rowwise(potential, max_n);
    r.record(
        "potential, Bell-equations rejects",
        pot_row.is_some(),
        || showr(pot_row),
        || "a witness".into(),
    );
    let bell_ok = brep_check_recurrence(bell, max_n);
    r.record(
        "Bell accepted",
        bell_ok.is_none(),
        || show(bell_ok),
        || "None".into(),
    );
    let lah_ok = brep_check_rowwise(lah_unsigned, max_n);
    r.record(
        "Lah accepted",
        lah_ok.is_none(),
        || showr(lah_ok),
        || "None".into(),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::NAMED {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!(
            "nope".parse::<Suite>(),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn failures_are_reported() {
        let mut r = VerifyReport::new("demo");
        r.poly_eq("(n=1, k=1)", &x(1), &x(2));
        r.holds("fine", Ok(true));
        assert_eq!(r.checks, 2);
        assert!(!r.passed());
        assert_eq!(r.failures[0].lhs, "X1");
        assert_eq!(r.to_json()["failures"][0]["rhs"], "X2");
    }

    #[test]
    fn small_suites_pass() {
        for rep in [orthogonality(4), printed_values(4), negative_control(5)] {
            assert!(rep.passed(), "{rep}");
        }
    }
}
