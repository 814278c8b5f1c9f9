//! `B_{n,k}` and `A_{n,k}` for all integer indices, the reciprocity laws they
//! obey, and the potential-polynomial identities of Schlömilch–Schläfli,
//! Schur–Jabotinsky, Comtet and Melzak.

use std::sync::LazyLock;

use num_traits::Zero;

use crate::derived::BRepFamily;
use crate::error::{Error, Result};
use crate::families::{
    assoc_bell, bell, potential, potential_hat, reciprocal_poly, reciprocal_poly_hat, stirling_a,
    FamilyId, FamilyTable,
};
use crate::numbers::{binomial, factorial_q, int, sign};
use crate::polyring::{t, x, MultiPoly, Rational, Var, T_VAR};
use crate::series::PowerSeries;

pub(crate) static BELL_EXT: LazyLock<FamilyTable> =
    LazyLock::new(|| FamilyTable::new(FamilyId::BellExt));
pub(crate) static STIRLING_A_EXT: LazyLock<FamilyTable> =
    LazyLock::new(|| FamilyTable::new(FamilyId::StirlingAExt));

/// `X_j -> X_{j+1}/(j+1)`.
fn shift_scaled(v: Var) -> Option<MultiPoly> {
    Some(x(v + 1).scale(&(Rational::from_integer((v as i64 + 1).into())).recip()))
}

/// `B_{n,k}` for any integers: `C(n, n-k) P^_{n-k,k}(X_1/1, X_2/2, ...)`.
pub fn bell_ext(n: i64, k: i64) -> MultiPoly {
    let c = binomial(n, n - k);
    if n < k || c.is_zero() {
        return MultiPoly::zero();
    }
    BELL_EXT.get_or_compute(n, k, || {
        potential_hat(n - k, k)
            .substitute(shift_scaled)
            .expect("X0 -> X1 is a unit")
            .scale(&c)
    })
}

/// `A_{n,k}` for any integers:
/// `C(n-1, k-1) P^_{n-k,n}(R^_0(X_1/1), R^_1(X_1/1, X_2/2), ...)`.
pub fn stirling_a_ext(n: i64, k: i64) -> MultiPoly {
    let c = binomial(n - 1, k - 1);
    if n < k || c.is_zero() {
        return MultiPoly::zero();
    }
    STIRLING_A_EXT.get_or_compute(n, k, || {
        potential_hat(n - k, n)
            .substitute(|v| {
                Some(
                    reciprocal_poly_hat(v as i64)
                        .substitute(shift_scaled)
                        .expect("X0 -> X1 is a unit"),
                )
            })
            .expect("R^_0 is a unit")
            .scale(&c)
    })
}

/// `A_{n,k} = (-1)^{n-k} B_{-k,-n}`.
pub fn reciprocity_check(n: i64, k: i64) -> bool {
    stirling_a_ext(n, k) == bell_ext(-k, -n).scale(&sign(n - k))
}

/// `Q̄_{n,k} = (-1)^{n-k} Q_{-k,-n}` for a regular B-representable family.
pub fn general_reciprocity(fam: &BRepFamily, n: i64, k: i64) -> Result<bool> {
    Ok(fam.q_bar(n, k)? == fam.q(-k, -n)?.scale(&sign(n - k)))
}

/// `B_{n,n-k} = sum_j C(n,k+j) X_1^{n-k-j} B~_{k+j,j}`.
pub fn bell_via_assoc(n: i64, k: i64) -> MultiPoly {
    (0..=k)
        .map(|j| {
            let e = n - k - j;
            if e < 0 {
                return MultiPoly::zero();
            }
            (&x(1).pow(e).expect("nonnegative") * &assoc_bell(k + j, j)).scale(&binomial(n, k + j))
        })
        .sum()
}

fn ss_coeff(n: i64, k: i64, j: i64) -> Rational {
    binomial(k + n, k - j) * binomial(k - n, k + j)
}

/// `A_{n,n-k} = (-1)^k sum_j C(k+n,k-j) C(k-n,k+j) X_1^{-(n+j)} B_{k+j,j}`.
pub fn schloemilch_schlaefli(n: i64, k: i64) -> MultiPoly {
    let s: MultiPoly = (0..=k)
        .map(|j| {
            (&x(1).pow(-(n + j)).expect("X1 is a unit") * &bell(k + j, j)).scale(&ss_coeff(n, k, j))
        })
        .sum();
    s.scale(&sign(k))
}

/// Right side of the generalized identity for `Q̄_{n,n-k}`, built from `Q`.
pub fn schloemilch_schlaefli_companion(fam: &BRepFamily, n: i64, k: i64) -> Result<MultiPoly> {
    let lead = fam.h(1).pow(-1)?;
    let mut s = MultiPoly::zero();
    for j in 0..=k {
        s += (&lead.pow(n + j)? * &fam.q(k + j, j)?).scale(&ss_coeff(n, k, j));
    }
    Ok(s.scale(&sign(k)))
}

/// Right side of the generalized identity for `Q_{n,n-k}`, built from `Q̄`.
pub fn schloemilch_schlaefli_family(fam: &BRepFamily, n: i64, k: i64) -> Result<MultiPoly> {
    let lead = fam.h(1);
    let mut s = MultiPoly::zero();
    for j in 0..=k {
        s += (&lead.pow(n + j)? * &fam.q_bar(k + j, j)?).scale(&ss_coeff(n, k, j));
    }
    Ok(s.scale(&sign(k)))
}

/// Both generalized Schlömilch–Schläfli identities at `(n, n-k)`.
pub fn schloemilch_schlaefli_general(fam: &BRepFamily, n: i64, k: i64) -> Result<bool> {
    if !fam.is_regular() {
        return Err(Error::NotRegular);
    }
    Ok(
        schloemilch_schlaefli_companion(fam, n, k)? == fam.q_bar(n, n - k)?
            && schloemilch_schlaefli_family(fam, n, k)? == fam.q(n, n - k)?,
    )
}

/// `P^_{n-k,k}(X_j/j) = (k/n) P^_{n-k,-n}(A_{j,1}/j)` for `k <= n != 0`.
pub fn potential_reciprocity(n: i64, k: i64) -> Result<bool> {
    if n == 0 || k > n {
        return Err(Error::DomainViolation(format!(
            "need k <= n != 0, got n={n}, k={k}"
        )));
    }
    let lhs = potential_hat(n - k, k).substitute(shift_scaled)?;
    let rhs = potential_hat(n - k, -n)
        .substitute(|v| {
            let j = v as i64 + 1;
            Some(stirling_a(j, 1).scale(&int(j).recip()))
        })?
        .scale(&(int(k) / int(n)));
    Ok(lhs == rhs)
}

/// `P_{n,-k} = P_{n,k}(R_1, ..., R_n)`.
pub fn basic_potential_reciprocity(n: i64, k: i64) -> Result<bool> {
    let rhs = potential(n, k).compose_seq(|j| reciprocal_poly(j as i64))?;
    Ok(potential(n, -k) == rhs)
}

/// The three numbers compared by the Schur–Jabotinsky law.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurJabotinsky {
    /// `[x^n] φ^k`
    pub a: Rational,
    /// `[x^{-k}] inv(φ)^{-n}`
    pub b: Rational,
    /// `a` through the potential polynomial `P^_{n-k,k}(φ_j/j)/(n-k)!`
    pub a_potential: Rational,
    pub n: i64,
    pub k: i64,
}

impl SchurJabotinsky {
    pub fn holds(&self) -> bool {
        self.a == &self.b * int(self.k) / int(self.n) && self.a == self.a_potential
    }
}

/// Coefficients of `φ^k` and `inv(φ)^{-n}` for invertible `φ`, `n >= k`, `n != 0`.
pub fn schur_jabotinsky(phi: &PowerSeries, n: i64, k: i64) -> Result<SchurJabotinsky> {
    if !phi.is_invertible() {
        return Err(Error::NotInvertible);
    }
    if n == 0 || k > n {
        return Err(Error::DomainViolation(format!(
            "need k <= n != 0, got n={n}, k={k}"
        )));
    }
    let d = (n - k) as usize;
    if phi.order() < d + 1 {
        return Err(Error::DomainViolation(format!(
            "series order must be at least {}",
            d + 1
        )));
    }
    let u = phi.div_x()?;
    let a = u.pow(k)?.coeff(d);
    let v = phi.invert()?.div_x()?;
    let b = v.pow(-n)?.coeff(d);
    let a_potential = potential_hat(n - k, k)
        .substitute(shift_scaled)?
        .evaluate(|j| phi.taylor(j as usize))?
        / factorial_q(d as u64);
    Ok(SchurJabotinsky {
        a,
        b,
        a_potential,
        n,
        k,
    })
}

fn thm_c_coeffs(m: i64, k: i64) -> Vec<Rational> {
    let lead = int(k) * binomial(m + k, m);
    (0..=m)
        .map(|j| &lead * sign(j) * binomial(m, j) / int(k + j))
        .collect()
}

fn check_thm_c_domain(n: i64, k: i64, m: i64) -> Result<()> {
    if n < 0 || m < n {
        return Err(Error::DomainViolation(format!(
            "need m >= n >= 0, got n={n}, m={m}"
        )));
    }
    if (0..=m).contains(&-k) {
        return Err(Error::DomainViolation(format!(
            "-k = {} lies in 0..={m}",
            -k
        )));
    }
    Ok(())
}

/// `P_{n,-k} = k C(m+k,m) sum_{j<=m} (-1)^j/(k+j) C(m,j) P_{n,j}`.
pub fn comtet_thm_c(n: i64, k: i64, m: i64) -> Result<bool> {
    check_thm_c_domain(n, k, m)?;
    let rhs: MultiPoly = thm_c_coeffs(m, k)
        .iter()
        .enumerate()
        .map(|(j, c)| potential(n, j as i64).scale(c))
        .sum();
    Ok(potential(n, -k) == rhs)
}

/// `p(t+k) = k C(m+k,m) sum_{j<=m} (-1)^j/(k+j) C(m,j) p(t-j)` in `Q[t]`.
pub fn melzak(p: &MultiPoly, m: i64, k: i64) -> Result<bool> {
    if p.variables().iter().any(|&v| v != T_VAR) {
        return Err(Error::DomainViolation(
            "Melzak's formula needs a polynomial in t".into(),
        ));
    }
    let deg = p.degree_in(T_VAR) as i64;
    check_thm_c_domain(deg, k, m)?;
    let shift = |c: i64| -> Result<MultiPoly> {
        Ok(p.substitute(|v| (v == T_VAR).then(|| &t() + &MultiPoly::from(c)))?)
    };
    let mut rhs = MultiPoly::zero();
    for (j, c) in thm_c_coeffs(m, k).iter().enumerate() {
        rhs += shift(-(j as i64))?.scale(c);
    }
    Ok(shift(k)? == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{bell_family, lah_signed_family};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn extended_values() {
        assert_eq!(bell_ext(-3, -5), p("45*X1^-7*X2^2 - 10*X1^-6*X3"));
        assert_eq!(bell_ext(-3, -4), p("6*X1^-5*X2"));
        assert_eq!(bell_ext(2, -1), MultiPoly::zero());
        assert_eq!(bell_ext(-1, 2), MultiPoly::zero());
        assert_eq!(bell_ext(0, 0), MultiPoly::one());
    }

    #[test]
    fn agrees_with_classical() {
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(bell_ext(n, k), bell(n, k), "B {n} {k}");
                assert_eq!(stirling_a_ext(n, k), stirling_a(n, k), "A {n} {k}");
            }
        }
    }

    #[test]
    fn reciprocity_small() {
        for n in -4..=4 {
            for k in -4..=4 {
                assert!(reciprocity_check(n, k), "{n} {k}");
            }
        }
        let lah = lah_signed_family();
        assert!(general_reciprocity(&lah, 3, 2).unwrap());
        assert!(general_reciprocity(&bell_family(), -2, -3).unwrap());
    }

    #[test]
    fn assoc_route() {
        assert_eq!(bell_via_assoc(4, 2), p("3*X2^2 + 4*X1*X3"));
        assert_eq!(bell_via_assoc(5, 2), bell(5, 3));
    }

    #[test]
    fn schlaefli() {
        assert_eq!(schloemilch_schlaefli(4, 1), p("-6*X1^-5*X2"));
        assert_eq!(schloemilch_schlaefli(3, 0), p("X1^-3"));
        assert!(schloemilch_schlaefli_general(&bell_family(), 5, 2).unwrap());
    }

    #[test]
    fn potential_laws() {
        assert!(potential_reciprocity(3, 2).unwrap());
        assert!(potential_reciprocity(-2, -4).unwrap());
        assert!(basic_potential_reciprocity(3, 2).unwrap());
    }

    #[test]
    fn schur_jabotinsky_geometric() {
        let sj = schur_jabotinsky(&PowerSeries::geometric_x(6), 3, 1).unwrap();
        assert_eq!(sj.a, int(1));
        assert!(sj.holds());
    }

    #[test]
    fn theorem_c_and_melzak() {
        assert!(comtet_thm_c(3, 1, 3).unwrap());
        assert!(comtet_thm_c(3, 1, 5).unwrap());
        assert!(matches!(
            comtet_thm_c(3, -2, 3),
            Err(Error::DomainViolation(_))
        ));
        let sq = &t() * &t();
        assert!(melzak(&sq, 2, 1).unwrap());
        let cubic = &(&sq * &t()) - &t();
        assert!(melzak(&cubic, 5, 2).unwrap());
    }
}
