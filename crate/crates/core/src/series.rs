//! Truncated formal power series over the rationals.
//!
//! Values store ordinary coefficients `c_n = [x^n] f`; `taylor(n) = n! c_n`
//! gives the derivative view `D^n(f)(0)`. Binary operations truncate to the
//! smaller order of their operands.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::{factorial_q, int};
use crate::polyring::{MultiPoly, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    #[error("composition case violated: {0}")]
    CompositionCaseViolation(&'static str),
    #[error("series is not compositionally invertible (needs c0 = 0, c1 != 0)")]
    NotInvertible,
    #[error("inversion routes disagree at coefficient {0}")]
    RouteMismatch(usize),
    #[error("cannot parse series: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Truncated power series `c_0 + c_1 x + ... + c_N x^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// From ordinary coefficients; an empty vector becomes the zero series of
    /// order 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        PowerSeries { coeffs }
    }

    /// From Taylor coefficients `D^n(f)(0)`.
    pub fn from_taylor(taylor: Vec<Rational>) -> Self {
        PowerSeries::new(
            taylor
                .into_iter()
                .enumerate()
                .map(|(n, t)| t / factorial_q(n as u64))
                .collect(),
        )
    }

    pub fn from_fn<F: Fn(usize) -> Rational>(order: usize, f: F) -> Self {
        PowerSeries::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::from_fn(order, |_| Rational::zero())
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c x^e` truncated at `order`.
    pub fn monomial(c: Rational, e: usize, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// The identity function `x`.
    pub fn id(order: usize) -> Self {
        PowerSeries::monomial(Rational::one(), 1, order)
    }

    /// `exp(x) - 1`.
    pub fn expm(order: usize) -> Self {
        PowerSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                factorial_q(n as u64).recip()
            }
        })
    }

    /// Mercator's series `log(1 + x) = sum (-1)^(n-1) x^n / n`.
    pub fn logm(order: usize) -> Self {
        PowerSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                crate::numbers::sign(n as i64 - 1) / int(n as i64)
            }
        })
    }

    /// `x / (1 - x)`.
    pub fn geometric_x(order: usize) -> Self {
        PowerSeries::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient `[x^n] f`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Taylor coefficient `D^n(f)(0) = n! c_n`.
    pub fn taylor(&self, n: usize) -> Rational {
        assert!(
            n <= self.order(),
            "taylor({n}) beyond order {}",
            self.order()
        );
        &self.coeffs[n] * factorial_q(n as u64)
    }

    pub fn taylors(&self) -> Vec<Rational> {
        (0..=self.order()).map(|n| self.taylor(n)).collect()
    }

    pub fn is_f0(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn is_f1(&self) -> bool {
        !self.is_f0()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_f0() && self.order() >= 1 && !self.coeffs[1].is_zero()
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::from_fn(order, |n| self.coeff(n))
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::from_fn(n, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::from_fn(n, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    /// Multiplicative inverse of a unit.
    pub fn reciprocal(&self) -> Result<PowerSeries, SeriesError> {
        if self.is_f0() {
            return Err(SeriesError::NotAUnit);
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = inv0.clone();
        for m in 1..=n {
            let mut s = Rational::zero();
            for i in 1..=m {
                s += &self.coeffs[i] * &g[m - i];
            }
            g[m] = -s * &inv0;
        }
        Ok(PowerSeries::new(g))
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, k: i64) -> Result<PowerSeries, SeriesError> {
        let base = if k < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut acc = PowerSeries::constant(Rational::one(), self.order());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// 0-case composition `self ∘ g` with `g(0) = 0`.
    pub fn compose(&self, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        if !g.is_f0() {
            return Err(SeriesError::CompositionCaseViolation(
                "inner series must vanish at 0",
            ));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        // Horner: ((c_n g + c_{n-1}) g + ...) + c_0
        let mut acc = PowerSeries::zero(n);
        for i in (0..=n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Termwise derivative; the order drops by one (order 0 stays 0).
    pub fn derive(&self) -> PowerSeries {
        let n = self.order();
        if n == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries::from_fn(n - 1, |i| &self.coeffs[i + 1] * int(i as i64 + 1))
    }

    /// `D_φ(f) = D(f) / D(φ)`.
    pub fn lie_derive(phi: &PowerSeries, f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        Ok(f.derive().mul(&phi.derive().reciprocal()?))
    }

    /// `f / x` for `f ∈ F_0`.
    pub fn div_x(&self) -> Result<PowerSeries, SeriesError> {
        if !self.is_f0() {
            return Err(SeriesError::CompositionCaseViolation("f/x needs f(0) = 0"));
        }
        let n = self.order();
        if n == 0 {
            return Ok(PowerSeries::zero(0));
        }
        Ok(PowerSeries::from_fn(n - 1, |i| self.coeffs[i + 1].clone()))
    }

    /// Compositional inverse by iterated Lie derivation: the Taylor
    /// coefficients of the inverse are `D_f^n(id)(0)`.
    pub fn invert(&self) -> Result<PowerSeries, SeriesError> {
        if !self.is_invertible() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let mut taylor = vec![Rational::zero(); n + 1];
        let mut h = PowerSeries::id(n);
        for (m, slot) in taylor.iter_mut().enumerate().skip(1) {
            h = PowerSeries::lie_derive(&self.truncate(n + 1 - m), &h)?;
            *slot = h.coeffs[0].clone();
        }
        Ok(PowerSeries::from_taylor(taylor))
    }

    /// Compositional inverse computed by two independent routes (iterated
    /// Lie derivation and `A_{n,1}` evaluated at the Taylor coefficients);
    /// fails if they disagree.
    pub fn invert_checked(&self) -> Result<PowerSeries, SeriesError> {
        let a = self.invert()?;
        let b = crate::families::invert_via_stirling(self)?;
        if let Some(i) = (0..=a.order()).find(|&i| a.coeffs[i] != b.coeffs[i]) {
            return Err(SeriesError::RouteMismatch(i));
        }
        Ok(a)
    }

    /// `exp ∘ φ` for `φ ∈ F_0`.
    pub fn exp_of(phi: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        let e = PowerSeries::expm(phi.order()).compose(phi)?;
        Ok(e.add(&PowerSeries::constant(Rational::one(), phi.order())))
    }

    /// JSON form `{"order": N, "taylor": [..]}` with rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesJson {
            order: self.order(),
            taylor: self.taylors().iter().map(|t| t.to_string()).collect(),
        })
        .expect("series serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PowerSeries, SeriesError> {
        let raw: SeriesJson =
            serde_json::from_value(v.clone()).map_err(|e| SeriesError::Parse(e.to_string()))?;
        if raw.taylor.len() != raw.order + 1 {
            return Err(SeriesError::Parse(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.taylor.len()
            )));
        }
        let taylor = raw
            .taylor
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| SeriesError::Parse(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::from_taylor(taylor))
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.parse().ok()?, num_bigint::BigInt::one()),
    };
    if d == num_bigint::BigInt::zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    taylor: Vec<String>,
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Finite Laurent polynomial in one variable `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly1 {
    pub fn new<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c: &mut Rational| !c.is_zero());
        LaurentPoly1 { terms }
    }

    /// `x^e`.
    pub fn power(e: i32) -> Self {
        LaurentPoly1::new([(e, Rational::one())])
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn derive(&self) -> LaurentPoly1 {
        LaurentPoly1::new(self.terms.iter().map(|(&e, c)| (e - 1, c * int(e as i64))))
    }

    /// `D^k(f)`.
    pub fn derive_n(&self, k: usize) -> LaurentPoly1 {
        (0..k).fold(self.clone(), |f, _| f.derive())
    }

    /// Evaluates at a polynomial argument (a unit when negative powers occur).
    pub fn eval_poly(&self, arg: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero();
        for (&e, c) in &self.terms {
            out += arg.pow(e as i64)?.scale(c);
        }
        Ok(out)
    }

    /// 1-case composition `self ∘ g` with `g(0) != 0`.
    pub fn compose(&self, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        if g.is_f0() {
            return Err(SeriesError::CompositionCaseViolation(
                "inner series must be a unit",
            ));
        }
        let mut out = PowerSeries::zero(g.order());
        for (&e, c) in &self.terms {
            out = out.add(&g.pow(e as i64)?.scale(c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn ser(c: &[i64]) -> PowerSeries {
        PowerSeries::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn products() {
        assert_eq!(ser(&[1, 1, 0]).mul(&ser(&[1, -1, 0])), ser(&[1, 0, -1]));
        assert_eq!(ser(&[0, 1, 0]).mul(&ser(&[0, 1, 0])), ser(&[0, 0, 1]));
        assert_eq!(
            PowerSeries::expm(4).mul(&PowerSeries::expm(4)).taylor(2),
            int(2)
        );
    }

    #[test]
    fn reciprocals() {
        let g = ser(&[1, 1, 0, 0, 0]).reciprocal().unwrap();
        assert_eq!(g, ser(&[1, -1, 1, -1, 1]));
        assert_eq!(
            ser(&[2, 0]).reciprocal().unwrap(),
            PowerSeries::new(vec![rat(1, 2), int(0)])
        );
        assert_eq!(ser(&[0, 1]).reciprocal(), Err(SeriesError::NotAUnit));
    }

    #[test]
    fn compositions() {
        let f = ser(&[3, 1, 4, 1, 5]);
        assert_eq!(f.compose(&PowerSeries::id(4)).unwrap(), f);
        let e = PowerSeries::expm(7).compose(&PowerSeries::logm(7)).unwrap();
        assert_eq!(e, PowerSeries::id(7));
        assert_eq!(
            ser(&[0, 0, 1, 0]).compose(&ser(&[0, 2, 0, 0])).unwrap(),
            ser(&[0, 0, 4, 0])
        );
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn laurent_compositions() {
        let g = LaurentPoly1::power(-1)
            .compose(&ser(&[1, 1, 0, 0]))
            .unwrap();
        assert_eq!(g, ser(&[1, -1, 1, -1]));
        assert_eq!(
            LaurentPoly1::power(0).compose(&ser(&[5, 1, 2])).unwrap(),
            ser(&[1, 0, 0])
        );
        assert_eq!(
            LaurentPoly1::power(2).compose(&ser(&[1, 1, 0])).unwrap(),
            ser(&[1, 2, 1])
        );
        assert!(LaurentPoly1::power(2).compose(&ser(&[0, 1])).is_err());
    }

    #[test]
    fn derivatives() {
        let e = PowerSeries::expm(6);
        let one = PowerSeries::constant(int(1), 5);
        assert_eq!(e.derive(), e.truncate(5).add(&one));
        let l = PowerSeries::logm(8);
        let mut d = l.clone();
        for n in 1..=8u64 {
            d = d.derive();
            assert_eq!(
                d.coeff(0),
                crate::numbers::sign(n as i64 - 1) * factorial_q(n - 1)
            );
        }
        assert!(PowerSeries::constant(int(4), 3)
            .derive()
            .coeffs()
            .iter()
            .all(|c| c.is_zero()));
    }

    #[test]
    fn lie_derivations() {
        let phi = ser(&[0, 2, 1, 3, 0, 1]);
        let d = PowerSeries::lie_derive(&phi, &phi).unwrap();
        assert_eq!(d, PowerSeries::constant(int(1), 4));
        let ephi = PowerSeries::exp_of(&phi).unwrap();
        assert_eq!(
            PowerSeries::lie_derive(&phi, &ephi).unwrap(),
            ephi.truncate(4)
        );
        let f = ser(&[1, 2, 3, 4]);
        assert_eq!(
            PowerSeries::lie_derive(&PowerSeries::id(3), &f).unwrap(),
            f.derive()
        );
    }

    #[test]
    fn inversions() {
        assert_eq!(PowerSeries::expm(8).invert().unwrap(), PowerSeries::logm(8));
        assert_eq!(PowerSeries::id(5).invert().unwrap(), PowerSeries::id(5));
        let g = PowerSeries::geometric_x(6).invert().unwrap();
        let expected = PowerSeries::from_fn(6, |n| {
            if n == 0 {
                int(0)
            } else {
                crate::numbers::sign(n as i64 - 1)
            }
        });
        assert_eq!(g, expected);
        assert_eq!(ser(&[1, 1]).invert(), Err(SeriesError::NotInvertible));
        assert_eq!(ser(&[0, 0, 1]).invert(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn exponentials() {
        assert_eq!(
            PowerSeries::exp_of(&PowerSeries::zero(4)).unwrap(),
            PowerSeries::constant(int(1), 4)
        );
        assert_eq!(
            PowerSeries::exp_of(&PowerSeries::logm(6)).unwrap(),
            ser(&[1, 1, 0, 0, 0, 0, 0])
        );
    }

    #[test]
    fn json_round_trip() {
        let f = PowerSeries::new(vec![int(0), rat(-1, 2), rat(5, 3)]);
        let v = f.to_json();
        assert_eq!(v["order"], 2);
        assert_eq!(PowerSeries::from_json(&v).unwrap(), f);
    }
}
