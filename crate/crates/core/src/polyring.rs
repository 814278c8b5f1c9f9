//! Sparse Laurent polynomials in the indeterminates `X_0, X_1, X_2, ...` with
//! exact rational coefficients.
//!
//! Only `X_0` and `X_1` may carry negative exponents. Two reserved indices
//! ([`T_VAR`], [`S_VAR`]) stand for auxiliary univariate variables `t` and
//! `s`, so that polynomial sequences in `t` share the same representation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The coefficient field.
pub type Rational = BigRational;

/// Index of an indeterminate.
pub type Var = u32;

/// Reserved index of the auxiliary variable `t`.
pub const T_VAR: Var = u32::MAX;
/// Reserved index of the auxiliary variable `s`.
pub const S_VAR: Var = u32::MAX - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("negative power of a polynomial with {terms} terms")]
    NegativePowerOfNonUnit { terms: usize },
    #[error("X{var} occurs with a negative exponent but was assigned a non-unit")]
    NonInvertibleSubstitution { var: Var },
    #[error("X{var} occurs with a negative exponent but was assigned 0")]
    ZeroDenominator { var: Var },
    #[error("negative exponent on {0}; only X0 and X1 may be inverted")]
    LaurentVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

fn var_name(v: Var) -> String {
    match v {
        T_VAR => "t".to_string(),
        S_VAR => "s".to_string(),
        j => format!("X{j}"),
    }
}

fn may_invert(v: Var) -> bool {
    v <= 1
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs with nonzero
/// exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(Var, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(j: Var) -> Self {
        Monomial { exps: vec![(j, 1)] }
    }

    /// Builds a monomial, merging repeated variables and dropping zero
    /// exponents.
    pub fn from_exps<I: IntoIterator<Item = (Var, i32)>>(it: I) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_insert(0) += e;
        }
        let exps: Vec<(Var, i32)> = map.into_iter().filter(|&(_, e)| e != 0).collect();
        for &(v, e) in &exps {
            if e < 0 && !may_invert(v) {
                return Err(PolyError::LaurentVariable(var_name(v)));
            }
        }
        Ok(Monomial { exps })
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, j: Var) -> i32 {
        self.exps
            .binary_search_by_key(&j, |&(v, _)| v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.exps.iter().copied()
    }

    /// Total degree `sum e_j`.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Weight `sum j * e_j`.
    pub fn weight(&self) -> i64 {
        self.exps.iter().map(|&(v, e)| v as i64 * e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    fn inverse(&self) -> Result<Monomial, PolyError> {
        for &(v, e) in &self.exps {
            if e > 0 && !may_invert(v) {
                return Err(PolyError::LaurentVariable(var_name(v)));
            }
        }
        Ok(Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        })
    }

    fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }
}

impl Ord for Monomial {
    /// Weight first, then total degree, then exponents compared variable by
    /// variable (lower index first, smaller exponent first).
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                let (a, b) = (&self.exps, &other.exps);
                let (mut i, mut j) = (0, 0);
                loop {
                    let va = a.get(i).map(|p| p.0);
                    let vb = b.get(j).map(|p| p.0);
                    let v = match (va, vb) {
                        (None, None) => return Ordering::Equal,
                        (Some(x), None) => x,
                        (None, Some(y)) => y,
                        (Some(x), Some(y)) => x.min(y),
                    };
                    let ea = if va == Some(v) { a[i].1 } else { 0 };
                    let eb = if vb == Some(v) { b[j].1 } else { 0 };
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    if va == Some(v) {
                        i += 1;
                    }
                    if vb == Some(v) {
                        j += 1;
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Shorthand for the indeterminate `X_j`.
pub fn x(j: Var) -> MultiPoly {
    MultiPoly::var(j)
}

/// The auxiliary variable `t`.
pub fn t() -> MultiPoly {
    MultiPoly::var(T_VAR)
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn var(j: Var) -> Self {
        MultiPoly::term(Monomial::var(j), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Sums an arbitrary collection of terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// The single term if the polynomial is a nonzero monomial times a
    /// scalar.
    pub fn as_unit(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    /// Integer power; negative exponents require a single-term polynomial.
    pub fn pow(&self, k: i64) -> Result<MultiPoly, PolyError> {
        if k < 0 {
            let (m, c) = self
                .as_unit()
                .ok_or(PolyError::NegativePowerOfNonUnit { terms: self.len() })?;
            let inv = m.inverse()?;
            let e = (-k) as i32;
            let coef = crate::numbers::rpow(c, k);
            return Ok(MultiPoly::term(inv.pow(e), coef));
        }
        if let Some((m, c)) = self.as_unit() {
            return Ok(MultiPoly::term(m.pow(k as i32), crate::numbers::rpow(c, k)));
        }
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `X_j`.
    pub fn partial_derivative(&self, j: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(j);
            if e == 0 {
                continue;
            }
            let lowered = m.mul(&Monomial {
                exps: vec![(j, -1)],
            });
            out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Simultaneous substitution `X_j -> f(j)`; variables for which `f`
    /// returns `None` stay fixed.
    pub fn substitute<F>(&self, f: F) -> Result<MultiPoly, PolyError>
    where
        F: Fn(Var) -> Option<MultiPoly>,
    {
        let mut images: HashMap<Var, Option<MultiPoly>> = HashMap::new();
        let mut powers: HashMap<(Var, i32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, i32)> = Vec::new();
            let mut acc = MultiPoly::constant(c.clone());
            for (v, e) in m.iter() {
                let img = images.entry(v).or_insert_with(|| f(v));
                let Some(img) = img else {
                    kept.push((v, e));
                    continue;
                };
                if acc.is_zero() {
                    break;
                }
                let key = (v, e);
                if let std::collections::hash_map::Entry::Vacant(slot) = powers.entry(key) {
                    if e < 0 && img.is_zero() {
                        return Err(PolyError::ZeroDenominator { var: v });
                    }
                    if e < 0 && img.as_unit().is_none() {
                        return Err(PolyError::NonInvertibleSubstitution { var: v });
                    }
                    slot.insert(img.pow(e as i64)?);
                }
                acc = &acc * &powers[&key];
            }
            if acc.is_zero() {
                continue;
            }
            let kept = Monomial { exps: kept };
            for (n, a) in acc.terms {
                out.add_term(n.mul(&kept), a);
            }
        }
        Ok(out)
    }

    /// Substitution from an explicit assignment table.
    pub fn substitute_map(&self, map: &BTreeMap<Var, MultiPoly>) -> Result<MultiPoly, PolyError> {
        self.substitute(|v| map.get(&v).cloned())
    }

    /// `P ∘ Q_#`: replaces every `X_j` with `j >= 1` by `q(j)`.
    pub fn compose_seq<F>(&self, q: F) -> Result<MultiPoly, PolyError>
    where
        F: Fn(usize) -> MultiPoly,
    {
        self.substitute(|v| {
            if (1..S_VAR).contains(&v) {
                Some(q(v as usize))
            } else {
                None
            }
        })
    }

    /// Evaluates at rational values for every variable.
    pub fn evaluate<F>(&self, f: F) -> Result<Rational, PolyError>
    where
        F: Fn(Var) -> Rational,
    {
        let mut total = Rational::zero();
        let mut cache: HashMap<Var, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            for (v, e) in m.iter() {
                let val = cache.entry(v).or_insert_with(|| f(v));
                if e < 0 && val.is_zero() {
                    return Err(PolyError::ZeroDenominator { var: v });
                }
                acc *= crate::numbers::rpow(val, e as i64);
            }
            total += acc;
        }
        Ok(total)
    }

    /// Unification: every variable set to `value`.
    pub fn unify(&self, value: &Rational) -> Result<Rational, PolyError> {
        self.evaluate(|_| value.clone())
    }

    /// Common total degree and weight, when uniform across terms.
    pub fn grading(&self) -> (Option<i64>, Option<i64>) {
        let uniform = |vals: Vec<i64>| {
            let first = *vals.first()?;
            vals.iter().all(|&v| v == first).then_some(first)
        };
        (
            uniform(self.terms.keys().map(Monomial::degree).collect()),
            uniform(self.terms.keys().map(Monomial::weight).collect()),
        )
    }

    /// Largest exponent of `X_j` (0 for the zero polynomial).
    pub fn degree_in(&self, j: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(j)).max().unwrap_or(0)
    }

    /// Sorted set of variables that occur.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Coefficients of a polynomial in `X_j` alone, indexed by exponent.
    pub fn univariate_coeffs(&self, j: Var) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(j);
            if e < 0 || m.iter().any(|(v, _)| v != j) {
                return None;
            }
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Rational::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    /// Renders with custom variable names.
    pub fn to_text_with<F: Fn(Var) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = {
                let factors: Vec<String> = m
                    .iter()
                    .map(|(v, e)| {
                        if e == 1 {
                            name(v)
                        } else {
                            format!("{}^{}", name(v), e)
                        }
                    })
                    .collect();
                factors.join("*")
            };
            let neg = c.is_negative();
            let mag = c.abs();
            let piece = if body.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                body
            } else {
                format!("{mag}*{body}")
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }

    /// LaTeX rendering with subscripted indeterminates.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    let base = match v {
                        T_VAR => "t".to_string(),
                        S_VAR => "s".to_string(),
                        j => format!("X_{{{j}}}"),
                    };
                    if e == 1 {
                        base
                    } else {
                        format!("{base}^{{{e}}}")
                    }
                })
                .collect();
            let body = body.join(" ");
            let neg = c.is_negative();
            let mag = c.abs();
            let coef = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            let piece = if body.is_empty() {
                coef
            } else if mag.is_one() {
                body
            } else {
                format!("{coef} {body}")
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }

    /// JSON form: array of `{"coeff": {"num", "den"}, "exps": {"j": e}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: JsonCoeff {
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                },
                exps: m
                    .iter()
                    .map(|(v, e)| {
                        let key = match v {
                            T_VAR => "t".to_string(),
                            S_VAR => "s".to_string(),
                            j => j.to_string(),
                        };
                        (key, e)
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("polynomial terms serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MultiPoly, PolyError> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(v.clone()).map_err(|e| PolyError::Parse(e.to_string()))?;
        let mut p = MultiPoly::zero();
        for t in terms {
            let num: BigInt = t
                .coeff
                .num
                .parse()
                .map_err(|_| PolyError::Parse(t.coeff.num.clone()))?;
            let den: BigInt = t
                .coeff
                .den
                .parse()
                .map_err(|_| PolyError::Parse(t.coeff.den.clone()))?;
            if den.is_zero() {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            let mut exps = Vec::new();
            for (k, e) in t.exps {
                exps.push((parse_var_key(&k)?, e));
            }
            p.add_term(Monomial::from_exps(exps)?, Rational::new(num, den));
        }
        Ok(p)
    }
}

fn parse_var_key(k: &str) -> Result<Var, PolyError> {
    match k {
        "t" => Ok(T_VAR),
        "s" => Ok(S_VAR),
        _ => k
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad variable key {k:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonCoeff {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: JsonCoeff,
    exps: BTreeMap<String, i32>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(var_name))
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;

    /// Parses the text form produced by `Display`, e.g. `3*X2^2 - 1/2*X1^-3*X4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> PolyError {
        PolyError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("bad integer"))
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i32 = self
            .int()?
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self, coef: &mut Rational, exps: &mut Vec<(Var, i32)>) -> Result<(), PolyError> {
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                let j: Var = self
                    .int()?
                    .try_into()
                    .map_err(|_| self.err("variable index"))?;
                exps.push((j, self.exponent()?));
            }
            Some(b't') => {
                self.pos += 1;
                exps.push((T_VAR, self.exponent()?));
            }
            Some(b's') => {
                self.pos += 1;
                exps.push((S_VAR, self.exponent()?));
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let mut q = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.int()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= Rational::from_integer(den);
                }
                *coef *= q;
            }
            _ => return Err(self.err("expected factor")),
        }
        Ok(())
    }

    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero();
        let mut first = true;
        loop {
            let mut neg = false;
            match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty input")),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ if first => {}
                _ => return Err(self.err("expected + or -")),
            }
            first = false;
            let mut coef = Rational::one();
            let mut exps = Vec::new();
            self.factor(&mut coef, &mut exps)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut coef, &mut exps)?;
            }
            if neg {
                coef = -coef;
            }
            p.add_term(Monomial::from_exps(exps)?, coef);
        }
        Ok(p)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(crate::numbers::int(c))
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_and_like_terms() {
        assert!((&x(1) + &-x(1)).is_zero());
        assert_eq!(p("X2*X1^-3") + p("2*X2*X1^-3"), p("3*X1^-3*X2"));
        assert_eq!((p("3*X1*X2") + p("4*X1*X3")).len(), 2);
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(&x(1) * &x(1).pow(-1).unwrap(), MultiPoly::one());
        let s = &x(1) + &x(2);
        assert_eq!(s.pow(2).unwrap(), p("X1^2 + 2*X1*X2 + X2^2"));
        assert_eq!(s.pow(0).unwrap(), MultiPoly::one());
        assert_eq!(x(1).pow(-3).unwrap(), p("X1^-3"));
        assert_eq!(x(1).pow(5).unwrap(), p("X1^5"));
        assert!(matches!(
            s.pow(-1),
            Err(PolyError::NegativePowerOfNonUnit { terms: 2 })
        ));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("3*X2^2 + 4*X1*X3").partial_derivative(3), p("4*X1"));
        assert_eq!(p("X1^-3").partial_derivative(1), p("-3*X1^-4"));
        assert!(MultiPoly::from(7).partial_derivative(1).is_zero());
    }

    #[test]
    fn laurent_restricted_to_first_two() {
        assert!(Monomial::from_exps([(2, -1)]).is_err());
        assert!("X3^-1".parse::<MultiPoly>().is_err());
        assert!(x(2).pow(-1).is_err());
    }

    #[test]
    fn substitution_rules() {
        let r1 = p("-X0^-2*X1");
        let got = r1.substitute(|v| (v == 0).then(MultiPoly::one)).unwrap();
        assert_eq!(got, p("-X1"));
        let bad = r1.substitute(|v| (v == 0).then(|| &x(0) + &x(1)));
        assert_eq!(bad, Err(PolyError::NonInvertibleSubstitution { var: 0 }));
        let q = p("X1^2*X3 + 5");
        assert_eq!(q.substitute(|v| Some(x(v))).unwrap(), q);
    }

    #[test]
    fn unification() {
        assert_eq!(p("3*X2^2 + 4*X1*X3").unify(&int(1)).unwrap(), int(7));
        assert_eq!(MultiPoly::zero().unify(&int(1)).unwrap(), int(0));
        assert_eq!(
            p("X1^-1").unify(&int(0)),
            Err(PolyError::ZeroDenominator { var: 1 })
        );
        assert_eq!(p("X1^-2*X2").unify(&int(2)).unwrap(), rat(1, 2));
    }

    #[test]
    fn grading_slots() {
        assert_eq!(p("3*X2^2 + 4*X1*X3").grading(), (Some(2), Some(4)));
        assert_eq!(p("X1 + X2").grading(), (Some(1), None));
        assert_eq!(MultiPoly::zero().grading(), (None, None));
    }

    #[test]
    fn text_round_trip_and_order() {
        let q = p("4*X1*X3 + 3*X2^2");
        assert_eq!(q.to_string(), "3*X2^2 + 4*X1*X3");
        assert_eq!(MultiPoly::from(-1).to_string(), "-1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        let r = p("-1/2*X1^-3*X2 + t^2 - 7");
        assert_eq!(r.to_string().parse::<MultiPoly>().unwrap(), r);
    }

    #[test]
    fn latex_form() {
        assert_eq!(
            p("3*X2^2 + 4*X1*X3").to_latex(),
            "3 X_{2}^{2} + 4 X_{1} X_{3}"
        );
        assert_eq!(p("-1/2*X1^-3").to_latex(), "-\\frac{1}{2} X_{1}^{-3}");
    }

    #[test]
    fn json_round_trip() {
        let q = p("-6*X1^-5*X2 + 1/3*t^2*X4");
        let v = q.to_json();
        assert_eq!(MultiPoly::from_json(&v).unwrap(), q);
        assert_eq!(v[0]["exps"]["1"], serde_json::json!(-5));
    }
}
