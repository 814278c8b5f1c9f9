//! Binomial sequences and the identities obtained by substituting them into
//! the polynomial families; Knuth–Pittel tree polynomials; connection
//! coefficients; classical and generalized Lagrange inversion polynomials.
//!
//! Univariate polynomials in `t` are [`MultiPoly`] values over [`T_VAR`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{
    assoc_bell, at_taylor, bell, bell_at, complete_bell, dehat, factorial_hat, logarithmic,
    potential, reciprocal_poly, reciprocal_poly_hat, stirling1, stirling_a, stirling_a_at,
    tree_poly,
};
use crate::numbers::{binomial, factorial_q, falling_int, int, rpow, sign};
use crate::polyring::{t, x, MultiPoly, Rational, Var, T_VAR};
use crate::series::PowerSeries;

/// `p(c t)` for a polynomial in `t`.
pub fn scale_t(p: &MultiPoly, c: &Rational) -> MultiPoly {
    p.substitute(|v| (v == T_VAR).then(|| t().scale(c)))
        .expect("t never carries a negative exponent")
}

/// Coefficient of `t^1`, i.e. `f'(0)`.
fn linear_coeff(p: &MultiPoly) -> Rational {
    p.coeff(&t_monomial(1))
}

fn t_monomial(e: i32) -> crate::polyring::Monomial {
    crate::polyring::Monomial::from_exps([(T_VAR, e)]).expect("t has nonnegative exponent")
}

/// A finite prefix `f_0, ..., f_N` of a polynomial sequence in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialSeq {
    polys: Vec<MultiPoly>,
}

impl BinomialSeq {
    pub fn new(polys: Vec<MultiPoly>) -> Self {
        BinomialSeq { polys }
    }

    /// `f_n(t) = sum_k t^k B^φ_{n,k}(0)`, the coefficients of `exp(t φ)`.
    pub fn from_phi(phi: &PowerSeries, max_n: usize) -> Result<Self> {
        if !phi.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut polys = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n as i64 {
            let mut p = MultiPoly::zero();
            for k in 0..=n {
                let c = bell_at(n, k, phi)?;
                p += t().pow(k)?.scale(&c);
            }
            polys.push(p);
        }
        Ok(BinomialSeq { polys })
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &MultiPoly {
        &self.polys[n]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `f'_1(0), f'_2(0), ...` (index 0 holds `f'_0(0)`).
    pub fn derivatives_at_zero(&self) -> Vec<Rational> {
        self.polys.iter().map(linear_coeff).collect()
    }

    /// Binomial type, tested through `f_n(t) = B_n(t f'_1(0), ..., t f'_n(0))`
    /// together with `deg f_n = n` and `f'_1(0) != 0`.
    pub fn is_binomial(&self) -> bool {
        let d = self.derivatives_at_zero();
        if self.polys.len() > 1 && d[1].is_zero() {
            return false;
        }
        self.polys.iter().enumerate().all(|(n, f)| {
            if f.degree_in(T_VAR) as usize != n || f.variables().iter().any(|&v| v != T_VAR) {
                return false;
            }
            let rep = complete_bell(n as i64)
                .compose_seq(|j| t().scale(&d[j]))
                .expect("polynomial substitution");
            &rep == f
        })
    }

    /// The defining convolution `f_n(s+t) = sum_k C(n,k) f_{n-k}(s) f_k(t)`.
    pub fn satisfies_convolution(&self) -> bool {
        let s_of = |p: &MultiPoly| {
            p.substitute(|v| (v == T_VAR).then(|| MultiPoly::var(crate::polyring::S_VAR)))
                .expect("polynomial substitution")
        };
        self.polys.iter().enumerate().all(|(n, f)| {
            let lhs = f
                .substitute(|v| {
                    (v == T_VAR).then(|| &t() + &MultiPoly::var(crate::polyring::S_VAR))
                })
                .expect("polynomial substitution");
            let rhs: MultiPoly = (0..=n)
                .map(|k| {
                    (&s_of(&self.polys[n - k]) * &self.polys[k])
                        .scale(&binomial(n as i64, k as i64))
                })
                .sum();
            lhs == rhs
        })
    }
}

/// One named identity instance.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub n: i64,
    pub k: Option<i64>,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// All substitution identities for a binomial sequence, `1 <= n <= max_n`.
#[allow(clippy::needless_range_loop)]
pub fn binomial_identity_suite(seq: &BinomialSeq, max_n: usize) -> Result<Vec<IdentityCheck>> {
    let max_n = max_n.min(seq.len().saturating_sub(1));
    let f = |j: usize| seq.get(j).clone();
    let fa = |j: usize, c: i64| scale_t(seq.get(j), &int(c));
    let d = seq.derivatives_at_zero();
    let plain = |p: &MultiPoly| p.compose_seq(f);
    // X_j -> j f_{j-1}(t) and X_j -> f_{j-1}(j t)
    let idem = |p: &MultiPoly| p.compose_seq(|j| f(j - 1).scale(&int(j as i64)));
    let forest = |p: &MultiPoly| p.compose_seq(|j| fa(j - 1, j as i64));
    let mut out = Vec::new();
    let mut push = |name, n: usize, k: Option<i64>, lhs: MultiPoly, rhs: MultiPoly| {
        out.push(IdentityCheck {
            name,
            n: n as i64,
            k,
            lhs,
            rhs,
        });
    };
    for n in 1..=max_n {
        let ni = n as i64;
        push(
            "logarithmic",
            n,
            None,
            plain(&logarithmic(ni))?,
            t().scale(&d[n]),
        );
        for k in -2..=3i64 {
            push("potential", n, Some(k), plain(&potential(ni, k))?, fa(n, k));
        }
        push(
            "reciprocal",
            n,
            None,
            plain(&reciprocal_poly(ni))?,
            fa(n, -1),
        );
        push("tree", n, None, plain(&tree_poly(ni))?, fa(n - 1, ni));
        for k in 0..=3i64 {
            let rhs = (0..=k).map(|j| fa(n, j).scale(&stirling1(k, j))).sum();
            push(
                "factorial",
                n,
                Some(k),
                plain(&dehat(&factorial_hat(ni, k)))?,
                rhs,
            );
        }
        let log_rhs = (1..=ni)
            .map(|k| fa(n, k).scale(&(sign(k - 1) * binomial(ni, k) / int(k))))
            .sum();
        push(
            "logarithmic-potential",
            n,
            None,
            plain(&logarithmic(ni))?,
            log_rhs,
        );
        for k in 1..=ni {
            let bert = (0..=k)
                .map(|j| fa(n, j).scale(&(sign(k - j) * binomial(k, j))))
                .sum::<MultiPoly>()
                .scale(&factorial_q(k as u64).recip());
            push("bertrand", n, Some(k), plain(&bell(ni, k))?, bert);
            let nk = (n as i64 - k) as usize;
            push(
                "idempotency",
                n,
                Some(k),
                idem(&bell(ni, k))?,
                fa(nk, k).scale(&binomial(ni, k)),
            );
            push(
                "forest-0",
                n,
                Some(k),
                idem(&stirling_a(ni, k))?,
                fa(nk, -ni).scale(&binomial(ni - 1, k - 1)),
            );
            push(
                "forest-1",
                n,
                Some(k),
                forest(&bell(ni, k))?,
                fa(nk, ni).scale(&binomial(ni - 1, k - 1)),
            );
            push(
                "forest-2",
                n,
                Some(k),
                forest(&stirling_a(ni, k))?,
                fa(nk, -k).scale(&binomial(ni, k)),
            );
        }
    }
    Ok(out)
}

/// Knuth–Pittel coefficient `t_{n,k}` by the explicit double sum.
pub fn knuth_pittel_coeff(n: i64, k: i64) -> Rational {
    if n == 0 {
        return if k == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
    }
    let mut s = Rational::zero();
    for j in k.max(1)..=n {
        let s1 = stirling1(j, k);
        if s1.is_zero() {
            continue;
        }
        for i in j..=n {
            s += &s1 * rpow(&int(n), n - i) * factorial_q(i as u64) / factorial_q(j as u64)
                * binomial(i - 1, j - 1)
                * binomial(n - 1, i - 1);
        }
    }
    s
}

/// `t_n(y)` (as a polynomial in `t`) by the explicit double sum.
pub fn knuth_pittel(n: i64) -> MultiPoly {
    (0..=n)
        .map(|k| {
            t().pow(k)
                .expect("nonnegative")
                .scale(&knuth_pittel_coeff(n, k))
        })
        .sum()
}

/// `τ(x) = sum n^{n-1} x^n / n!`.
pub fn tree_function(order: usize) -> PowerSeries {
    PowerSeries::from_taylor(
        (0..=order)
            .map(|n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    rpow(&int(n as i64), n as i64 - 1)
                }
            })
            .collect(),
    )
}

/// `t_n(y)` as the binomial sequence of `logm ∘ g ∘ τ` with `g = x/(1-x)`.
pub fn knuth_pittel_series(max_n: usize) -> Result<BinomialSeq> {
    let tau = tree_function(max_n);
    let g = PowerSeries::geometric_x(max_n);
    let phi = PowerSeries::logm(max_n).compose(&g.compose(&tau)?)?;
    BinomialSeq::from_phi(&phi, max_n)
}

/// `t_{r,1}` by its closed single-index formula.
pub fn knuth_pittel_linear(r: i64) -> Rational {
    let mut s = Rational::zero();
    for i in 1..=r {
        for j in 1..=i {
            s += sign(j - 1) * rpow(&int(r), r - i) * factorial_q(i as u64) / int(j)
                * binomial(i - 1, j - 1)
                * binomial(r - 1, i - 1);
        }
    }
    s
}

/// `t_n(y) = B_n(y t_{1,1}, ..., y t_{n,1})`.
pub fn knuth_pittel_via_bell(n: i64) -> MultiPoly {
    complete_bell(n)
        .compose_seq(|r| t().scale(&knuth_pittel_linear(r as i64)))
        .expect("polynomial substitution")
}

/// The series whose exponential generates a binomial sequence:
/// `φ(x) = sum f'_n(0) x^n/n!`.
pub fn phi_of(seq: &BinomialSeq) -> PowerSeries {
    let d = seq.derivatives_at_zero();
    PowerSeries::from_taylor(d)
}

/// Connection coefficients `c_{n,k} = B_{n,k}(a_1, ...)` with
/// `a_j = D^j(inv(φ) ∘ ψ)(0)`, `f` generated by `ψ`, `g` by `φ`.
pub fn mullin_rota_connect(f: &BinomialSeq, g: &BinomialSeq) -> Result<Vec<Vec<Rational>>> {
    let psi = phi_of(f);
    let phi = phi_of(g);
    if !psi.is_invertible() || !phi.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let a = phi.invert()?.compose(&psi)?;
    let n_max = f.len().min(g.len()) as i64 - 1;
    (0..=n_max)
        .map(|n| (0..=n).map(|k| bell_at(n, k, &a)).collect())
        .collect()
}

/// Result of the connection-coefficient theorem on a pair of sequences.
#[derive(Clone, Debug, PartialEq)]
pub struct MullinRota {
    pub coeffs: Vec<Vec<Rational>>,
    /// `f_n = sum_k c_{n,k} g_k` for every `n`
    pub connects: bool,
    /// `h_n = sum_k c_{n,k} t^k` is binomial
    pub h_binomial: bool,
}

pub fn mullin_rota(f: &BinomialSeq, g: &BinomialSeq) -> Result<MullinRota> {
    let coeffs = mullin_rota_connect(f, g)?;
    let connects = coeffs.iter().enumerate().all(|(n, row)| {
        let s: MultiPoly = row.iter().enumerate().map(|(k, c)| g.get(k).scale(c)).sum();
        &s == f.get(n)
    });
    let h = BinomialSeq::new(
        coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, c)| t().pow(k as i64).expect("nonnegative").scale(c))
                    .sum()
            })
            .collect(),
    );
    Ok(MullinRota {
        coeffs,
        connects,
        h_binomial: h.is_binomial(),
    })
}

/// Outcome of transferring binomiality through `f_n = sum_k g_k B_{n,k}(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BothOrNone {
    pub g_binomial: bool,
    pub f_binomial: bool,
    /// `g_n = sum_k f_k A_{n,k}(a)` recovers `g`
    pub recovered: bool,
}

impl BothOrNone {
    pub fn holds(&self) -> bool {
        self.g_binomial == self.f_binomial && self.recovered
    }
}

/// Builds `f` from `g` and the constants `a_1, a_2, ...` (`a[0]` ignored).
pub fn both_or_none_check(g: &BinomialSeq, a: &[Rational]) -> Result<BothOrNone> {
    if a.len() < 2 || a[1].is_zero() {
        return Err(Error::DomainViolation("a_1 must be nonzero".into()));
    }
    let n_max = g.len().min(a.len()) - 1;
    let psi = PowerSeries::from_taylor(
        std::iter::once(Rational::zero())
            .chain(a[1..=n_max].iter().cloned())
            .collect(),
    );
    let mut f = Vec::new();
    for n in 0..=n_max as i64 {
        let mut s = MultiPoly::zero();
        for k in 0..=n {
            s += g.get(k as usize).scale(&bell_at(n, k, &psi)?);
        }
        f.push(s);
    }
    let mut recovered = true;
    for n in 0..=n_max as i64 {
        let mut s = MultiPoly::zero();
        for k in 0..=n {
            s += f[k as usize].scale(&stirling_a_at(n, k, &psi)?);
        }
        recovered &= &s == g.get(n as usize);
    }
    let f = BinomialSeq::new(f);
    Ok(BothOrNone {
        g_binomial: g.is_binomial(),
        f_binomial: f.is_binomial(),
        recovered,
    })
}

/// `f_n(t) = sum_k (t)_k B_{n,k}(f_1(1), f_2(1), ...)` for every `n`.
pub fn yang_check(seq: &BinomialSeq) -> bool {
    let at_one: Vec<Rational> = seq
        .polys()
        .iter()
        .map(|p| p.evaluate(|_| Rational::one()).expect("polynomial"))
        .collect();
    seq.polys().iter().enumerate().all(|(n, f)| {
        let s: MultiPoly = (0..=n as i64)
            .map(|k| {
                let falling: MultiPoly = (0..k).fold(MultiPoly::one(), |acc, i| {
                    &acc * &(&t() - &MultiPoly::from(i))
                });
                let b = bell(n as i64, k)
                    .evaluate(|j| at_one[j as usize].clone())
                    .expect("polynomial");
                falling.scale(&b)
            })
            .sum();
        &s == f
    })
}

/// `Λ_n` by the associate Bell sum `sum_k (-1)^k X_1^{-(n+k)} B~_{n-1+k,k}`.
pub fn lambda_classical(n: i64) -> MultiPoly {
    (0..n)
        .map(|k| (&x(1).pow(-(n + k)).expect("unit") * &assoc_bell(n - 1 + k, k)).scale(&sign(k)))
        .sum()
}

/// `Λ_n = sum_k (-1)^k C(2n-1, n-1-k) X_1^{-(n+k)} B_{n-1+k,k}`.
pub fn lambda_classical_ss(n: i64) -> MultiPoly {
    (0..n)
        .map(|k| {
            (&x(1).pow(-(n + k)).expect("unit") * &bell(n - 1 + k, k))
                .scale(&(sign(k) * binomial(2 * n - 1, n - 1 - k)))
        })
        .sum()
}

/// Whether the sequence `P_n` satisfies `P_n ∘ P_# = X_n` for `1 <= n <= n_max`.
pub fn self_inverse<F: Fn(i64) -> MultiPoly>(p: F, n_min: i64, n_max: i64) -> Result<bool> {
    for n in n_min..=n_max {
        let composed = p(n).substitute(|v| Some(p(v as i64)))?;
        if composed != x(n as Var) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a ∈ F_1` (case 1) or `a ∈ F_inv` (case 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormCase {
    Unit,
    Invertible,
}

/// The pair `(a, φ)` describing `f = a · (c ∘ φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesForm {
    pub a: PowerSeries,
    pub phi: PowerSeries,
    pub case: FormCase,
}

impl SeriesForm {
    pub fn new(a: PowerSeries, phi: PowerSeries) -> Result<Self> {
        if !phi.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let case = if a.is_f1() {
            FormCase::Unit
        } else if a.is_invertible() {
            FormCase::Invertible
        } else {
            return Err(Error::CaseViolation(
                "a must be a unit or invertible".into(),
            ));
        };
        Ok(SeriesForm { a, phi, case })
    }

    fn order(&self) -> usize {
        self.a.order().min(self.phi.order())
    }

    fn need(&self, n: usize) -> Result<()> {
        if self.order() < n {
            return Err(Error::DomainViolation(format!(
                "series of order {} cannot describe index {n}",
                self.order()
            )));
        }
        Ok(())
    }
}

/// Conversion polynomial `Γ_n(a, φ)`: `f_n` as a linear form in the `c_k`.
/// In the unit case the `X_0` term is dropped (`c_0 = 0`).
pub fn gamma(n: i64, form: &SeriesForm) -> Result<MultiPoly> {
    form.need(n as usize)?;
    let mut out = MultiPoly::zero();
    let k_min = if form.case == FormCase::Unit { 1 } else { 0 };
    for k in k_min..=n {
        let mut c = Rational::zero();
        for j in k..=n {
            c += binomial(n, j) * form.a.taylor((n - j) as usize) * bell_at(j, k, &form.phi)?;
        }
        out += x(k as Var).scale(&c);
    }
    Ok(out)
}

/// Inverse conversion `Γ̄_n(a, φ)`: `c_n` as a linear form in the `f_k`.
pub fn gamma_bar(n: i64, form: &SeriesForm) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    match form.case {
        FormCase::Unit => {
            form.need(n as usize)?;
            for k in 1..=n {
                let mut c = Rational::zero();
                for j in k..=n {
                    let r = at_taylor(&reciprocal_poly_hat(j - k), &form.a)?;
                    c += binomial(j, k) * r * stirling_a_at(n, j, &form.phi)?;
                }
                out += x(k as Var).scale(&c);
            }
        }
        FormCase::Invertible => {
            form.need(n as usize + 1)?;
            for k in 0..=n {
                let mut c = Rational::zero();
                for j in k..=n {
                    let r = reciprocal_poly_hat(j - k)
                        .evaluate(|i| form.a.taylor(i as usize + 1) / int(i as i64 + 1))?;
                    c += binomial(j, k) * r * stirling_a_at(n, j, &form.phi)?;
                }
                out += x(k as Var + 1).scale(&(c / int(k + 1)));
            }
        }
    }
    Ok(out)
}

/// `Γ ∘ Γ̄_# = X_n` and `Γ̄ ∘ Γ_# = X_n`, `1 <= n <= n_max`.
pub fn conversions_inverse(form: &SeriesForm, n_max: i64) -> Result<bool> {
    let g: Vec<MultiPoly> = (0..=n_max + 1)
        .map(|j| gamma(j, form))
        .collect::<Result<_>>()?;
    let gb: Vec<MultiPoly> = (0..=n_max + 1)
        .map(|j| gamma_bar(j, form))
        .collect::<Result<_>>()?;
    for n in 1..=n_max as usize {
        let a = g[n].substitute(|v| Some(gb[v as usize].clone()))?;
        let b = gb[n].substitute(|v| Some(g[v as usize].clone()))?;
        if a != x(n as Var) || b != x(n as Var) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generalized Lagrange inversion polynomial
/// `Λ_n(a,φ | b,ψ) = Γ̄_n(b,ψ) ∘ A_{#,1} ∘ Γ_#(a,φ)`.
pub fn lambda_general(n: i64, from: &SeriesForm, to: &SeriesForm) -> Result<MultiPoly> {
    let gb = gamma_bar(n, to)?;
    let top = gb.variables().last().copied().unwrap_or(0) as i64;
    let g: Vec<MultiPoly> = (0..=top).map(|j| gamma(j, from)).collect::<Result<_>>()?;
    Ok(gb.compose_seq(|j| {
        stirling_a(j as i64, 1)
            .compose_seq(|i| g[i].clone())
            .expect("Γ_1 is a single term")
    })?)
}

/// `Λ(a,φ|b,ψ) ∘ Λ_#(b,ψ|a,φ) = X_n` for `1 <= n <= n_max`.
pub fn lambda_round_trip(from: &SeriesForm, to: &SeriesForm, n_max: i64) -> Result<bool> {
    for n in 1..=n_max {
        let l = lambda_general(n, from, to)?;
        let top = l.variables().last().copied().unwrap_or(0) as i64;
        let back: Vec<MultiPoly> = (0..=top)
            .map(|j| lambda_general(j, to, from))
            .collect::<Result<_>>()?;
        if l.substitute(|v| Some(back[v as usize].clone()))? != x(n as Var) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposes an invertible `f` and its inverse by the two forms and checks
/// that `Λ` carries the constants of `f` to those of `inv(f)`, and that
/// `a · (c ∘ φ)` rebuilds `f`.
pub fn lambda_apply_check(
    f: &PowerSeries,
    from: &SeriesForm,
    to: &SeriesForm,
    n_max: i64,
) -> Result<bool> {
    if !f.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let finv = f.invert()?;
    let consts = |g: &PowerSeries, form: &SeriesForm| -> Result<Vec<Rational>> {
        (0..=n_max + 1)
            .map(|n| at_taylor(&gamma_bar(n, form)?, g))
            .collect()
    };
    let c = consts(f, from)?;
    let d = consts(&finv, to)?;
    let cs = PowerSeries::from_taylor(c.clone());
    let rebuilt = from.a.mul(&cs.compose(&from.phi)?);
    let ord = rebuilt.order().min(n_max as usize);
    if rebuilt.truncate(ord) != f.truncate(ord) {
        return Ok(false);
    }
    for n in 0..=n_max {
        let l = lambda_general(n, from, to)?;
        if l.evaluate(|v| c[v as usize].clone())? != d[n as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed form for `Λ_n(1,φ | 1,ψ)`.
pub fn lambda_special_1(n: i64, phi: &PowerSeries, psi: &PowerSeries) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for k in 1..=n {
        let mut inner = MultiPoly::zero();
        for j in 1..=k {
            inner += stirling_a(k, j).scale(&stirling_a_at(j, 1, phi)?);
        }
        out += inner.scale(&stirling_a_at(n, k, psi)?);
    }
    Ok(out)
}

/// `(m)_j` extended by `(m)_{-1} = 1/(m+1)`.
fn falling_ext(m: i64, j: i64) -> Rational {
    if j >= 0 {
        falling_int(m, j as u64)
    } else {
        int(m + 1).recip()
    }
}

/// `Î_{n,k} = sum_j (-1)^j (k+j)_{j-1} X_0^{-(k+1+j)} B_{n,j}`.
pub fn i_hat(n: i64, k: i64) -> MultiPoly {
    (0..=n)
        .map(|j| {
            (&x(0).pow(-(k + 1 + j)).expect("unit") * &bell(n, j))
                .scale(&(sign(j) * falling_ext(k + j, j - 1)))
        })
        .sum()
}

/// Closed form for `Λ_n(id,φ | id,ψ)`.
pub fn lambda_special_2(n: i64, phi: &PowerSeries, psi: &PowerSeries) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for k in 0..=n {
        let mut inner = MultiPoly::zero();
        for j in 0..=k {
            inner += i_hat(j, k).scale(&bell_at(k, j, phi)?);
        }
        out += inner.scale(&stirling_a_at(n, k, psi)?);
    }
    Ok(out)
}

/// `Λ_n = sum_k (-1)^k C(sn+k, k-1) (k-1)! B_{n,k}`.
pub fn comtet_thm_f(n: i64, s: i64) -> MultiPoly {
    (1..=n)
        .map(|k| {
            bell(n, k).scale(&(sign(k) * binomial(s * n + k, k - 1) * factorial_q(k as u64 - 1)))
        })
        .sum()
}

/// For `f = sum (c_n/n!) x^{sn+1}` (`c_0 = 1`): the inverse has the same shape
/// with `d_n = Λ_n(c_1, ..., c_n)`, and `f ∘ inv(f) = id`, to `order`.
pub fn round_trip_thm_f(c: &[Rational], s: usize, order: usize) -> Result<bool> {
    if s == 0 || c.first() != Some(&Rational::one()) {
        return Err(Error::DomainViolation("need s >= 1 and c_0 = 1".into()));
    }
    let shaped = |v: &[Rational]| {
        PowerSeries::from_fn(order, |e| {
            if e >= 1 && (e - 1) % s == 0 {
                let n = (e - 1) / s;
                v.get(n)
                    .map(|cn| cn / factorial_q(n as u64))
                    .unwrap_or_default()
            } else {
                Rational::zero()
            }
        })
    };
    let n_max = (order - 1) / s;
    if c.len() <= n_max {
        return Err(Error::DomainViolation(format!("need c_0..c_{n_max}")));
    }
    let f = shaped(c);
    let d: Vec<Rational> = (0..=n_max as i64)
        .map(|n| {
            if n == 0 {
                Ok(Rational::one())
            } else {
                Ok(comtet_thm_f(n, s as i64).evaluate(|j| c[j as usize].clone())?)
            }
        })
        .collect::<Result<_>>()?;
    let g = shaped(&d);
    let inv = f.invert()?;
    Ok(inv == g && f.compose(&g)? == PowerSeries::id(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_examples() {
        let id = BinomialSeq::from_phi(&PowerSeries::id(5), 5).unwrap();
        for n in 0..=5 {
            assert_eq!(id.get(n), &t().pow(n as i64).unwrap());
        }
        let lg = BinomialSeq::from_phi(&PowerSeries::logm(5), 5).unwrap();
        assert_eq!(lg.get(3), &p("2*t - 3*t^2 + t^3"));
        assert!(lg.is_binomial() && lg.satisfies_convolution());
        let bad = BinomialSeq::new(vec![p("1"), p("t"), p("t^2 + 1")]);
        assert!(!bad.is_binomial() && !bad.satisfies_convolution());
    }

    #[test]
    fn knuth_pittel_values() {
        assert_eq!(knuth_pittel(0), p("1"));
        assert_eq!(knuth_pittel(2), p("3*t + t^2"));
        assert_eq!(knuth_pittel(3), p("17*t + 9*t^2 + t^3"));
        let s = knuth_pittel_series(5).unwrap();
        for n in 0..=5 {
            assert_eq!(s.get(n), &knuth_pittel(n as i64));
            assert_eq!(knuth_pittel_via_bell(n as i64), knuth_pittel(n as i64));
        }
    }

    #[test]
    fn lambda_routes() {
        assert_eq!(lambda_classical(2), p("-X1^-3*X2"));
        assert_eq!(lambda_classical(1), p("X1^-1"));
        for n in 1..=5 {
            assert_eq!(lambda_classical(n), stirling_a(n, 1));
            assert_eq!(lambda_classical_ss(n), stirling_a(n, 1));
        }
        assert!(self_inverse(lambda_classical, 1, 4).unwrap());
    }

    #[test]
    fn thm_f_small() {
        assert_eq!(comtet_thm_f(1, 1), p("-X1"));
        assert!(round_trip_thm_f(&[int(1), int(2), rat(-1, 3), int(1), int(0)], 2, 8).unwrap());
        assert!(self_inverse(|n| i_hat(n, 2 * n), 0, 3).unwrap());
    }

    #[test]
    fn identity_conversion() {
        let form = SeriesForm::new(PowerSeries::constant(int(1), 6), PowerSeries::id(6)).unwrap();
        for n in 1..=4 {
            assert_eq!(gamma(n, &form).unwrap(), x(n as Var));
        }
        let l = lambda_general(3, &form, &form).unwrap();
        assert_eq!(l, stirling_a(3, 1));
    }
}
