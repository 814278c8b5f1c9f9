//! Partial Bell polynomials `B_{n,k}`, their orthogonal companions `A_{n,k}`
//! and the families built from them, together with the `Ω_n` operator that
//! turns function terms into polynomials.
//!
//! Every family has a default route (a recurrence, memoized in a
//! [`FamilyTable`]) and at least one independent closed form used as an
//! oracle.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{binomial, factorial, factorial_q, falling_int, int, sign};
use crate::polyring::{x, Monomial, MultiPoly, Rational, Var};
use crate::series::{LaurentPoly1, PowerSeries, SeriesError};

/// Families with a memoized table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Bell,
    StirlingA,
    Potential,
    BellExt,
    StirlingAExt,
    Comtet,
}

/// Thread-safe memo of `(n, k) -> polynomial` for one family.
pub struct FamilyTable {
    id: FamilyId,
    cache: RwLock<HashMap<(i64, i64), MultiPoly>>,
}

impl FamilyTable {
    pub fn new(id: FamilyId) -> Self {
        FamilyTable {
            id,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    /// Cached value, computing it outside the lock on a miss.
    pub fn get_or_compute<F: FnOnce() -> MultiPoly>(&self, n: i64, k: i64, f: F) -> MultiPoly {
        if let Some(p) = self
            .cache
            .read()
            .expect("family cache poisoned")
            .get(&(n, k))
        {
            return p.clone();
        }
        let p = f();
        self.cache
            .write()
            .expect("family cache poisoned")
            .entry((n, k))
            .or_insert(p)
            .clone()
    }

    pub fn cached(&self, n: i64, k: i64) -> Option<MultiPoly> {
        self.cache
            .read()
            .expect("family cache poisoned")
            .get(&(n, k))
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("family cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

static BELL: LazyLock<FamilyTable> = LazyLock::new(|| FamilyTable::new(FamilyId::Bell));
static STIRLING_A: LazyLock<FamilyTable> = LazyLock::new(|| FamilyTable::new(FamilyId::StirlingA));
static POTENTIAL: LazyLock<FamilyTable> = LazyLock::new(|| FamilyTable::new(FamilyId::Potential));

/// The shared table for a family.
pub fn table(id: FamilyId) -> &'static FamilyTable {
    match id {
        FamilyId::Bell => &BELL,
        FamilyId::StirlingA => &STIRLING_A,
        FamilyId::Potential => &POTENTIAL,
        FamilyId::BellExt => &crate::extended::BELL_EXT,
        FamilyId::StirlingAExt => &crate::extended::STIRLING_A_EXT,
        FamilyId::Comtet => &crate::derived::COMTET,
    }
}

/// Multiplicities `r_1, r_2, ...` of a partition (trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionType {
    pub r: Vec<u32>,
}

impl PartitionType {
    /// `r_j`, 1-based.
    pub fn get(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.r.get(j - 1).copied().unwrap_or(0)
    }

    /// Number of parts `sum r_j`.
    pub fn parts(&self) -> usize {
        self.r.iter().map(|&v| v as usize).sum()
    }

    /// Size `sum j r_j`.
    pub fn size(&self) -> usize {
        self.r
            .iter()
            .enumerate()
            .map(|(i, &v)| (i + 1) * v as usize)
            .sum()
    }

    /// `X_1^{r_1} X_2^{r_2} ...`
    pub fn monomial(&self) -> Monomial {
        Monomial::from_exps(
            self.r
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as Var + 1, v as i32)),
        )
        .expect("nonnegative exponents")
    }
}

/// All `(n,k)`-partition types: `sum r_j = k`, `sum j r_j = n`.
pub fn partition_types(n: usize, k: usize) -> Vec<PartitionType> {
    fn go(rest: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < parts {
            return;
        }
        let hi = max.min(rest - (parts - 1));
        for p in (1..=hi).rev() {
            cur.push(p);
            go(rest - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, k, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| {
            let mut r = vec![0u32; parts.first().copied().unwrap_or(0)];
            for p in parts {
                r[p - 1] += 1;
            }
            PartitionType { r }
        })
        .collect()
}

/// Partial Bell polynomial `B_{n,k}` (zero outside `0 <= k <= n`).
pub fn bell(n: i64, k: i64) -> MultiPoly {
    if n < 0 || k < 0 || k > n {
        return MultiPoly::zero();
    }
    if k == 0 {
        return if n == 0 {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        };
    }
    BELL.get_or_compute(n, k, || {
        // B_{n,k} = X_1 B_{n-1,k-1} + sum_j X_{j+1} dB_{n-1,k}/dX_j
        let m = n - 1;
        let prev = bell(m, k);
        let mut out = &x(1) * &bell(m, k - 1);
        for j in 1..=(m - k + 1) {
            out += &x(j as Var + 1) * &prev.partial_derivative(j as Var);
        }
        out
    })
}

/// `B_{n,k}` by the partition sum `sum n!/(prod r_j! (j!)^{r_j}) prod X_j^{r_j}`.
pub fn bell_partition_sum(n: usize, k: usize) -> MultiPoly {
    MultiPoly::from_terms(partition_types(n, k).into_iter().map(|pt| {
        let mut den = num_bigint::BigInt::one();
        for (i, &r) in pt.r.iter().enumerate() {
            den *= factorial(r as u64) * num_traits::pow(factorial(i as u64 + 1), r as usize);
        }
        (pt.monomial(), Rational::new(factorial(n as u64), den))
    }))
}

/// Multivariate Stirling polynomial `A_{n,k}`, the orthogonal companion of
/// `B_{n,k}`.
pub fn stirling_a(n: i64, k: i64) -> MultiPoly {
    if n < 0 || k < 0 || k > n {
        return MultiPoly::zero();
    }
    if k == 0 {
        return if n == 0 {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        };
    }
    STIRLING_A.get_or_compute(n, k, || {
        // A_{n,k} = X_1^{-1} (A_{n-1,k-1} + sum_{j=1}^{n-k} X_{j+1} dA_{n-1,k}/dX_j)
        let m = n - 1;
        let prev = stirling_a(m, k);
        let mut inner = stirling_a(m, k - 1);
        for j in 1..=(m - k + 1) {
            inner += &x(j as Var + 1) * &prev.partial_derivative(j as Var);
        }
        &x(1).pow(-1).expect("X1 is a unit") * &inner
    })
}

/// `A_{n,k}` as an alternating sum over associate Bell polynomials.
pub fn stirling_a_via_assoc(n: i64, k: i64) -> MultiPoly {
    if n == 0 && k == 0 {
        return MultiPoly::one();
    }
    if k < 1 || k > n {
        return MultiPoly::zero();
    }
    let mut out = MultiPoly::zero();
    for j in (k - 1)..=(n - 1) {
        let b = assoc_bell(2 * n - 1 - k - j, n - 1 - j);
        if b.is_zero() {
            continue;
        }
        let c = sign(n - 1 - j) * binomial(2 * n - 2 - j, k - 1);
        out += (&x(1).pow(j - 2 * n + 1).expect("unit") * &b).scale(&c);
    }
    out
}

/// `A_{n,k}` as a partition sum over `P(2n-1-k, n-1)`.
pub fn stirling_a_partition_sum(n: usize, k: usize) -> MultiPoly {
    if n == 0 && k == 0 {
        return MultiPoly::one();
    }
    if k < 1 || k > n {
        return MultiPoly::zero();
    }
    let lead = Monomial::from_exps([(1, -(2 * n as i32 - 1))]).expect("X1 may be inverted");
    MultiPoly::from_terms(partition_types(2 * n - 1 - k, n - 1).into_iter().map(|pt| {
        let r1 = pt.get(1) as usize;
        let mut den = factorial(k as u64 - 1);
        for (i, &r) in pt.r.iter().enumerate().skip(1) {
            den *= factorial(r as u64) * num_traits::pow(factorial(i as u64 + 1), r as usize);
        }
        let coef = sign((n - 1) as i64 - r1 as i64)
            * Rational::new(factorial((2 * n - 2 - r1) as u64), den);
        let m = Monomial::from_exps(pt.monomial().iter().chain(lead.iter()).collect::<Vec<_>>())
            .expect("valid monomial");
        (m, coef)
    }))
}

/// Associate Bell polynomial `B~_{n,k} = B_{n,k}(0, X_2, X_3, ...)`.
pub fn assoc_bell(n: i64, k: i64) -> MultiPoly {
    bell(n, k)
        .substitute(|v| (v == 1).then(MultiPoly::zero))
        .expect("no negative exponents in B")
}

/// Complete Bell polynomial `B_n = sum_k B_{n,k}`.
pub fn complete_bell(n: i64) -> MultiPoly {
    (0..=n).map(|k| bell(n, k)).sum()
}

/// Logarithmic polynomial `L_n = sum_k (-1)^{k-1} (k-1)! B_{n,k}`.
pub fn logarithmic(n: i64) -> MultiPoly {
    (1..=n)
        .map(|k| bell(n, k).scale(&(sign(k - 1) * factorial_q(k as u64 - 1))))
        .sum()
}

/// Geometric polynomial `sum_k k! B_{n,k}`.
pub fn geometric(n: i64) -> MultiPoly {
    (0..=n)
        .map(|k| bell(n, k).scale(&factorial_q(k as u64)))
        .sum()
}

/// Potential polynomial `P^_{n,k} = sum_j (k)_j X_0^{k-j} B_{n,j}` for any
/// integer `k`; zero for `n < 0`.
pub fn potential_hat(n: i64, k: i64) -> MultiPoly {
    if n < 0 {
        return MultiPoly::zero();
    }
    POTENTIAL.get_or_compute(n, k, || {
        (0..=n)
            .map(|j| {
                let c = falling_int(k, j as u64);
                if c.is_zero() {
                    return MultiPoly::zero();
                }
                (&x(0).pow(k - j).expect("X0 is a unit") * &bell(n, j)).scale(&c)
            })
            .sum()
    })
}

/// Sets `X_0 = 1`.
pub fn dehat(p: &MultiPoly) -> MultiPoly {
    p.substitute(|v| (v == 0).then(MultiPoly::one))
        .expect("1 is a unit")
}

/// `P_{n,k}`: the potential polynomial with `X_0 = 1`.
pub fn potential(n: i64, k: i64) -> MultiPoly {
    dehat(&potential_hat(n, k))
}

/// Reciprocal polynomial `R^_n = sum_k (-1)^k k! X_0^{-(k+1)} B_{n,k}`.
pub fn reciprocal_poly_hat(n: i64) -> MultiPoly {
    (0..=n)
        .map(|k| {
            (&x(0).pow(-(k + 1)).expect("unit") * &bell(n, k))
                .scale(&(sign(k) * factorial_q(k as u64)))
        })
        .sum()
}

pub fn reciprocal_poly(n: i64) -> MultiPoly {
    dehat(&reciprocal_poly_hat(n))
}

/// Tree polynomial `T^_n = sum_{k<n} (n)_k X_0^{n-k} B_{n-1,k}`.
pub fn tree_poly_hat(n: i64) -> MultiPoly {
    (0..n)
        .map(|k| {
            (&x(0).pow(n - k).expect("unit") * &bell(n - 1, k)).scale(&falling_int(n, k as u64))
        })
        .sum()
}

pub fn tree_poly(n: i64) -> MultiPoly {
    dehat(&tree_poly_hat(n))
}

/// Factorial polynomial `F^_{n,k} = sum_j s_1(k,j) P^_{n,j}`.
pub fn factorial_hat(n: i64, k: i64) -> MultiPoly {
    (0..=k)
        .map(|j| potential_hat(n, j).scale(&stirling1(k, j)))
        .sum()
}

/// Signed Stirling numbers of the first kind, `A_{n,k}` unified at 1.
pub fn stirling1(n: i64, k: i64) -> Rational {
    stirling_a(n, k)
        .unify(&Rational::one())
        .expect("1 is nonzero")
}

/// Stirling numbers of the second kind, `B_{n,k}` unified at 1.
pub fn stirling2(n: i64, k: i64) -> Rational {
    bell(n, k)
        .unify(&Rational::one())
        .expect("no negative exponents")
}

/// `rho_s = R_s(1/2, ..., 1/(s+1))` with `X_0 = 1`.
pub fn rho(s: i64) -> Rational {
    reciprocal_poly_hat(s)
        .evaluate(|v| int(1) / int(v as i64 + 1))
        .expect("nonzero arguments")
}

/// `s_1(n,k) = C(n-1,k-1) P_{n-k,n}(rho_1, ..., rho_{n-1})`.
pub fn stirling1_via_potential(n: i64, k: i64) -> Rational {
    let c = binomial(n - 1, k - 1);
    if c.is_zero() {
        return c;
    }
    let p = potential(n - k, n);
    c * p.evaluate(|v| rho(v as i64)).expect("polynomial in X_1..")
}

/// Evaluates `P` at the Taylor coefficients of `f` (`X_j -> D^j(f)(0)`).
pub fn at_taylor(p: &MultiPoly, f: &PowerSeries) -> Result<Rational> {
    if let Some(&v) = p.variables().last() {
        if v as usize > f.order() {
            return Err(Error::DomainViolation(format!(
                "X{v} needs a series of order >= {v}, got {}",
                f.order()
            )));
        }
    }
    Ok(p.evaluate(|v| f.taylor(v as usize))?)
}

/// `B^f_{n,k}(0)`.
pub fn bell_at(n: i64, k: i64, f: &PowerSeries) -> Result<Rational> {
    at_taylor(&bell(n, k), f)
}

/// `A^f_{n,k}(0)`; needs `D(f)(0) != 0` when `n >= 1`.
pub fn stirling_a_at(n: i64, k: i64, f: &PowerSeries) -> Result<Rational> {
    at_taylor(&stirling_a(n, k), f)
}

/// Compositional inverse with Taylor coefficients `A_{n,1}(f_1, ..., f_n)`.
pub fn invert_via_stirling(f: &PowerSeries) -> std::result::Result<PowerSeries, SeriesError> {
    if !f.is_invertible() {
        return Err(SeriesError::NotInvertible);
    }
    let taylor = (0..=f.order())
        .map(|n| {
            stirling_a(n as i64, 1)
                .evaluate(|v| f.taylor(v as usize))
                .map_err(SeriesError::from)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(PowerSeries::from_taylor(taylor))
}

/// FdB polynomial `Φ_n(f) = sum_k D^k(f)(0) B_{n,k}`.
pub fn fdb_poly(f: &PowerSeries, n: i64) -> MultiPoly {
    (0..=n)
        .map(|k| {
            let c = if (k as usize) <= f.order() {
                f.taylor(k as usize)
            } else {
                Rational::zero()
            };
            bell(n, k).scale(&c)
        })
        .sum()
}

/// 1-case FdB polynomial `Φ^_n(f) = sum_k D^k(f)(X_0) B_{n,k}`.
pub fn fdb_poly_hat(f: &LaurentPoly1, n: i64) -> MultiPoly {
    (0..=n)
        .map(|k| {
            let d = f
                .derive_n(k as usize)
                .eval_poly(&x(0))
                .expect("X0 is a unit");
            &d * &bell(n, k)
        })
        .sum()
}

/// `P ∘ Q_#` for an indexed family `Q`.
pub fn compose_family<F: Fn(usize) -> MultiPoly>(p: &MultiPoly, q: F) -> Result<MultiPoly> {
    Ok(p.compose_seq(q)?)
}

/// Checks `Φ_n(f∘g) = Φ_n(f) ∘ Φ_#(g)` for `n <= n_max` in the 0-case;
/// returns the indices that fail.
pub fn first_composition_rule_check(
    f: &PowerSeries,
    g: &PowerSeries,
    n_max: i64,
) -> Result<Vec<i64>> {
    if !g.is_f0() {
        return Err(Error::CaseViolation("0-case needs g(0) = 0".into()));
    }
    let fg = f.compose(g)?;
    let phis: Vec<MultiPoly> = (0..=n_max).map(|j| fdb_poly(g, j)).collect();
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let lhs = fdb_poly(&fg, n);
        let rhs = fdb_poly(f, n).substitute(|v| phis.get(v as usize).cloned())?;
        if lhs != rhs {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// The 1-case variant `Φ_n(f∘g) = Φ^_n(f) ∘ Φ_#(g)` with `f` a Laurent
/// polynomial and `g(0) != 0`.
pub fn first_composition_rule_check_1case(
    f: &LaurentPoly1,
    g: &PowerSeries,
    n_max: i64,
) -> Result<Vec<i64>> {
    if g.is_f0() {
        return Err(Error::CaseViolation("1-case needs g(0) != 0".into()));
    }
    let fg = f.compose(g)?;
    let phis: Vec<MultiPoly> = (0..=n_max).map(|j| fdb_poly(g, j)).collect();
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let lhs = fdb_poly(&fg, n);
        let rhs = fdb_poly_hat(f, n).substitute(|v| {
            if v == 0 {
                Some(MultiPoly::constant(g.coeff(0)))
            } else {
                phis.get(v as usize).cloned()
            }
        })?;
        if lhs != rhs {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// Second composition rule, Bell form:
/// `B^{f∘g}_{n,k}(0) = sum_j B^g_{n,j}(0) B^f_{j,k}(0)` for `f, g ∈ F_0`.
pub fn jabotinsky_bell(f: &PowerSeries, g: &PowerSeries, n: i64, k: i64) -> Result<bool> {
    if !f.is_f0() || !g.is_f0() {
        return Err(Error::CaseViolation("both series must vanish at 0".into()));
    }
    let fg = f.compose(g)?;
    let lhs = bell_at(n, k, &fg)?;
    let mut rhs = Rational::zero();
    for j in k..=n {
        rhs += bell_at(n, j, g)? * bell_at(j, k, f)?;
    }
    Ok(lhs == rhs)
}

/// Second composition rule, companion form:
/// `A^{f∘g}_{n,k}(0) = sum_j A^f_{n,j}(0) A^g_{j,k}(0)` for invertible `f, g`.
pub fn jabotinsky_stirling(f: &PowerSeries, g: &PowerSeries, n: i64, k: i64) -> Result<bool> {
    if !f.is_invertible() || !g.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let fg = f.compose(g)?;
    let lhs = stirling_a_at(n, k, &fg)?;
    let mut rhs = Rational::zero();
    for j in k..=n {
        rhs += stirling_a_at(n, j, f)? * stirling_a_at(j, k, g)?;
    }
    Ok(lhs == rhs)
}

/// Function terms over a placeholder `φ`, the input of [`omega`].
#[derive(Clone, Debug)]
pub enum Term {
    Phi,
    Series(PowerSeries),
    Sum(Box<Term>, Box<Term>),
    Product(Box<Term>, Box<Term>),
    Scale(Rational, Box<Term>),
    Reciprocal(Box<Term>),
    /// 0-case composition `f ∘ g`, `g(0) = 0`.
    Compose(Box<Term>, Box<Term>),
    /// 1-case composition `f ∘ g`, `f` a Laurent polynomial, `g(0) != 0`.
    ComposeLaurent(LaurentPoly1, Box<Term>),
    Inverse(Box<Term>),
    Derivative(Box<Term>),
}

impl std::ops::Add for Term {
    type Output = Term;
    fn add(self, o: Term) -> Term {
        Term::Sum(Box::new(self), Box::new(o))
    }
}

impl std::ops::Mul for Term {
    type Output = Term;
    fn mul(self, o: Term) -> Term {
        Term::Product(Box::new(self), Box::new(o))
    }
}

impl Term {
    pub fn series(s: PowerSeries) -> Term {
        Term::Series(s)
    }

    pub fn scale(self, c: Rational) -> Term {
        Term::Scale(c, Box::new(self))
    }

    pub fn reciprocal(self) -> Term {
        Term::Reciprocal(Box::new(self))
    }

    /// `self ∘ inner`.
    pub fn compose(self, inner: Term) -> Term {
        Term::Compose(Box::new(self), Box::new(inner))
    }

    pub fn laurent(f: LaurentPoly1, inner: Term) -> Term {
        Term::ComposeLaurent(f, Box::new(inner))
    }

    pub fn inverse(self) -> Term {
        Term::Inverse(Box::new(self))
    }

    pub fn derivative(self) -> Term {
        Term::Derivative(Box::new(self))
    }

    /// `self^k`, `k >= 1`, as a repeated product.
    pub fn pow(self, k: usize) -> Term {
        assert!(k >= 1, "pow needs k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// The actual series obtained by putting `φ := phi`.
    pub fn eval(&self, phi: &PowerSeries) -> Result<PowerSeries> {
        Ok(match self {
            Term::Phi => phi.clone(),
            Term::Series(s) => s.truncate(phi.order().min(s.order())),
            Term::Sum(a, b) => a.eval(phi)?.add(&b.eval(phi)?),
            Term::Product(a, b) => a.eval(phi)?.mul(&b.eval(phi)?),
            Term::Scale(c, a) => a.eval(phi)?.scale(c),
            Term::Reciprocal(a) => a.eval(phi)?.reciprocal()?,
            Term::Compose(f, g) => f.eval(phi)?.compose(&g.eval(phi)?)?,
            Term::ComposeLaurent(f, g) => f.compose(&g.eval(phi)?)?,
            Term::Inverse(a) => a.eval(phi)?.invert()?,
            Term::Derivative(a) => a.eval(phi)?.derive(),
        })
    }
}

/// `Ω_n(term | φ)`.
pub fn omega(n: usize, term: &Term) -> Result<MultiPoly> {
    Ok(omega_upto(n, term)?.swap_remove(n))
}

/// `Ω_0, ..., Ω_n` of a term, by structural recursion.
pub fn omega_upto(n: usize, term: &Term) -> Result<Vec<MultiPoly>> {
    match term {
        Term::Phi => Ok((0..=n).map(|j| x(j as Var)).collect()),
        Term::Series(s) => {
            if s.order() < n {
                return Err(Error::UnsupportedTerm(format!(
                    "series of order {} cannot supply Ω_{n}",
                    s.order()
                )));
            }
            Ok((0..=n).map(|j| MultiPoly::constant(s.taylor(j))).collect())
        }
        Term::Sum(a, b) => {
            let (a, b) = (omega_upto(n, a)?, omega_upto(n, b)?);
            Ok(a.iter().zip(&b).map(|(p, q)| p + q).collect())
        }
        Term::Product(a, b) => {
            let (a, b) = (omega_upto(n, a)?, omega_upto(n, b)?);
            Ok((0..=n)
                .map(|m| {
                    (0..=m)
                        .map(|k| (&a[m - k] * &b[k]).scale(&binomial(m as i64, k as i64)))
                        .sum()
                })
                .collect())
        }
        Term::Scale(c, a) => Ok(omega_upto(n, a)?.iter().map(|p| p.scale(c)).collect()),
        Term::Reciprocal(a) => {
            let f = omega_upto(n, a)?;
            if f[0].is_zero() {
                return Err(Error::CaseViolation(
                    "reciprocal of a term vanishing at 0".into(),
                ));
            }
            (0..=n)
                .map(|m| {
                    Ok(reciprocal_poly_hat(m as i64).substitute(|v| f.get(v as usize).cloned())?)
                })
                .collect()
        }
        Term::Compose(f, g) => {
            let gs = omega_upto(n, g)?;
            if !gs[0].is_zero() {
                return Err(Error::CaseViolation(
                    "0-case composition needs an inner term vanishing at 0".into(),
                ));
            }
            let fs = omega_upto(n, f)?;
            (0..=n)
                .map(|m| {
                    let mut acc = MultiPoly::zero();
                    for (k, fk) in fs.iter().enumerate().take(m + 1) {
                        let b = bell(m as i64, k as i64).compose_seq(|j| gs[j].clone())?;
                        acc += fk * &b;
                    }
                    Ok(acc)
                })
                .collect()
        }
        Term::ComposeLaurent(f, g) => {
            let gs = omega_upto(n, g)?;
            if gs[0].is_zero() {
                return Err(Error::CaseViolation(
                    "1-case composition needs an inner unit".into(),
                ));
            }
            (0..=n)
                .map(|m| {
                    let mut acc = MultiPoly::zero();
                    for k in 0..=m {
                        let d = f.derive_n(k).eval_poly(&gs[0])?;
                        let b = bell(m as i64, k as i64).compose_seq(|j| gs[j].clone())?;
                        acc += &d * &b;
                    }
                    Ok(acc)
                })
                .collect()
        }
        Term::Inverse(a) => {
            let fs = omega_upto(n, a)?;
            if !fs[0].is_zero() || (n >= 1 && fs[1].is_zero()) {
                return Err(Error::CaseViolation(
                    "inverse needs Ω_0 = 0 and Ω_1 != 0".into(),
                ));
            }
            (0..=n)
                .map(|m| {
                    if m == 0 {
                        Ok(MultiPoly::zero())
                    } else {
                        Ok(stirling_a(m as i64, 1).compose_seq(|j| fs[j].clone())?)
                    }
                })
                .collect()
        }
        Term::Derivative(a) => {
            let mut fs = omega_upto(n + 1, a)?;
            fs.remove(0);
            Ok(fs)
        }
    }
}
