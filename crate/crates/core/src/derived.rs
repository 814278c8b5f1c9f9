//! Families expressible as `B_{n,k}(H_1, H_2, ...)` for a generator sequence
//! `H`, their orthogonal companions, and the named instances: cycle
//! indicators, Lah, forest, idempotency, Comtet and involution polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::families::{
    bell, partition_types, potential_hat, reciprocal_poly_hat, stirling_a, tree_poly_hat, FamilyId,
    FamilyTable,
};
use crate::numbers::{binomial, factorial, factorial_q, int, sign};
use crate::polyring::{x, MultiPoly, Rational, Var};
use crate::series::PowerSeries;

pub(crate) static COMTET: LazyLock<FamilyTable> =
    LazyLock::new(|| FamilyTable::new(FamilyId::Comtet));

type Generator = Arc<dyn Fn(usize) -> MultiPoly + Send + Sync>;
type Cache = Arc<RwLock<HashMap<(i64, i64, bool), MultiPoly>>>;

/// A family `Q_{n,k} = B_{n,k}(H_1, ..., H_{n-k+1})` given by its generator.
#[derive(Clone)]
pub struct BRepFamily {
    name: String,
    generator: Generator,
    cache: Cache,
}

impl fmt::Debug for BRepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BRepFamily")
            .field("name", &self.name)
            .finish()
    }
}

impl BRepFamily {
    pub fn from_generator<F>(name: &str, h: F) -> Self
    where
        F: Fn(usize) -> MultiPoly + Send + Sync + 'static,
    {
        BRepFamily {
            name: name.to_string(),
            generator: Arc::new(h),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `H_j = Q_{j,1}`.
    pub fn h(&self, j: usize) -> MultiPoly {
        (self.generator)(j)
    }

    /// Regular when `Q_{1,1}` is a nonzero unit of the Laurent ring.
    pub fn is_regular(&self) -> bool {
        self.h(1).as_unit().is_some()
    }

    fn cached<F: FnOnce() -> Result<MultiPoly>>(
        &self,
        key: (i64, i64, bool),
        f: F,
    ) -> Result<MultiPoly> {
        if let Some(p) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(p.clone());
        }
        let p = f()?;
        self.cache
            .write()
            .expect("cache poisoned")
            .insert(key, p.clone());
        Ok(p)
    }

    /// `Q_{n,k}` for any integers, via the integer-index extension of `B`.
    pub fn q(&self, n: i64, k: i64) -> Result<MultiPoly> {
        self.cached((n, k, false), || {
            let b = crate::extended::bell_ext(n, k);
            Ok(b.compose_seq(|j| self.h(j))?)
        })
    }

    /// Orthogonal companion `Q̄_{n,k} = A_{n,k}(Q_{1,1}, Q_{2,1}, ...)`.
    pub fn q_bar(&self, n: i64, k: i64) -> Result<MultiPoly> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        self.cached((n, k, true), || {
            let a = crate::extended::stirling_a_ext(n, k);
            Ok(a.compose_seq(|j| self.h(j))?)
        })
    }

    /// The companion as a family in its own right (generator `Q̄_{j,1}`).
    pub fn orthogonal(&self) -> Result<BRepFamily> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        let me = self.clone();
        Ok(BRepFamily::from_generator(
            &format!("{}-bar", self.name),
            move |j| me.q_bar(j as i64, 1).expect("regular family"),
        ))
    }
}

/// `H_j = X_j`.
pub fn bell_family() -> BRepFamily {
    BRepFamily::from_generator("bell", |j| x(j as Var))
}

/// `H_j = A_{j,1}`.
pub fn stirling_a_family() -> BRepFamily {
    BRepFamily::from_generator("stirling-a", |j| stirling_a(j as i64, 1))
}

/// `H_j = (j-1)! X_j`.
pub fn cycle_family() -> BRepFamily {
    BRepFamily::from_generator("cycle", |j| x(j as Var).scale(&factorial_q(j as u64 - 1)))
}

/// `H_j = j! X_j`.
pub fn lah_unsigned_family() -> BRepFamily {
    BRepFamily::from_generator("lah+", |j| x(j as Var).scale(&factorial_q(j as u64)))
}

/// `H_j = L_{j,1}`.
pub fn lah_signed_family() -> BRepFamily {
    BRepFamily::from_generator("lah", |j| lah_signed(j as i64, 1))
}

/// `H_j = T^_j`.
pub fn forest_family() -> BRepFamily {
    BRepFamily::from_generator("forest", |j| tree_poly_hat(j as i64))
}

/// `H_j = j X_{j-1}`.
pub fn idempotency_family() -> BRepFamily {
    BRepFamily::from_generator("idempotency", |j| x(j as Var - 1).scale(&int(j as i64)))
}

/// `H_j = C_{j,1}`.
pub fn comtet_family() -> BRepFamily {
    BRepFamily::from_generator("comtet", |j| comtet(j as i64, 1))
}

/// First `(n,k)` where `Q_{n,k} = sum_j C(n-1,j-1) Q_{j,1} Q_{n-j,k-1}` fails.
pub fn brep_check_recurrence<Q>(q: Q, max_n: i64) -> Option<(i64, i64)>
where
    Q: Fn(i64, i64) -> MultiPoly,
{
    for n in 1..=max_n {
        for k in 1..=n {
            let rhs: MultiPoly = (1..=(n - k + 1))
                .map(|j| (&q(j, 1) * &q(n - j, k - 1)).scale(&binomial(n - 1, j - 1)))
                .sum();
            if q(n, k) != rhs {
                return Some((n, k));
            }
        }
    }
    None
}

/// Solves the row `B_{n,k}(H_1, ..., H_n) = Q_{n,k}`, `1 <= k <= n`, for
/// `H_2, ..., H_n` given `H_1`. `None` if `H_1^n != Q_{n,n}` or `H_1` is not a
/// unit.
pub fn bell_equations_row<Q>(q: &Q, n: i64, h1: &MultiPoly) -> Option<Vec<MultiPoly>>
where
    Q: Fn(i64, i64) -> MultiPoly,
{
    if h1.pow(n).ok()? != q(n, n) {
        return None;
    }
    // h[j] = H_j, 1-based; unknown entries are zero while solving.
    let mut h = vec![MultiPoly::zero(); n as usize + 1];
    h[1] = h1.clone();
    for k in (2..n).rev() {
        let j = (n - k + 1) as usize;
        let rest = bell(n, k).compose_seq(|i| h[i].clone()).ok()?;
        let lead = h1.pow(-(k - 1)).ok()?.scale(&binomial(n, k - 1).recip());
        h[j] = &(&q(n, k) - &rest) * &lead;
    }
    if n >= 2 {
        h[n as usize] = q(n, 1);
    }
    Some(h.split_off(1))
}

/// Row-by-row solvability in the manner of solving each row's Bell equations
/// separately: the first row `n` whose forced values `H_2, ..., H_{n-1}`
/// contradict those forced by row `n-1`, or whose diagonal admits no `H_1`.
pub fn brep_check_rowwise<Q>(q: Q, max_n: i64) -> Option<i64>
where
    Q: Fn(i64, i64) -> MultiPoly,
{
    let h1 = q(1, 1);
    let mut prev: Vec<MultiPoly> = Vec::new();
    for n in 1..=max_n {
        let Some(row) = bell_equations_row(&q, n, &h1) else {
            return Some(n);
        };
        // forced values: indices 2..n-1, i.e. row[1..n-1]
        let forced: Vec<MultiPoly> = row[1..(n as usize - 1).max(1)].to_vec();
        if forced.iter().zip(&prev).any(|(a, b)| a != b) {
            return Some(n);
        }
        prev = forced;
    }
    None
}

/// Cycle indicator `Z_{n,k} = B_{n,k}(0! X_1, 1! X_2, ...)`.
pub fn cycle_indicator(n: i64, k: i64) -> MultiPoly {
    cycle_family().q(n, k).expect("polynomial substitution")
}

/// `Z_{n,k}` as the partition sum with Cauchy's coefficients
/// `n! / prod (r_j! j^{r_j})`.
pub fn cycle_indicator_partition_sum(n: usize, k: usize) -> MultiPoly {
    MultiPoly::from_terms(partition_types(n, k).into_iter().map(|pt| {
        let mut den = num_bigint::BigInt::one();
        for (i, &r) in pt.r.iter().enumerate() {
            den *=
                factorial(r as u64) * num_traits::pow(num_bigint::BigInt::from(i + 1), r as usize);
        }
        (pt.monomial(), Rational::new(factorial(n as u64), den))
    }))
}

/// Checks `D^n(exp∘f)(0) = Z_n(t_1, ..., t_n)` with `t_j = D^j(f)(0)/(j-1)!`.
pub fn exponential_formula_check(f: &PowerSeries, n_max: usize) -> Result<bool> {
    if !f.is_f0() {
        return Err(Error::CaseViolation(
            "exponential formula needs f(0) = 0".into(),
        ));
    }
    let e = PowerSeries::exp_of(f)?;
    let t = |j: Var| f.taylor(j as usize) / factorial_q(j as u64 - 1);
    for n in 0..=n_max.min(f.order()) {
        let z: MultiPoly = (0..=n as i64).map(|k| cycle_indicator(n as i64, k)).sum();
        if z.evaluate(t)? != e.taylor(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unsigned Lah polynomial `L+_{n,k} = B_{n,k}(1! X_1, 2! X_2, ...)`.
pub fn lah_unsigned(n: i64, k: i64) -> MultiPoly {
    lah_unsigned_family()
        .q(n, k)
        .expect("polynomial substitution")
}

/// `L+_{n,k}` as the partition sum `n!/prod r_j! prod X_j^{r_j}`.
pub fn lah_unsigned_partition_sum(n: usize, k: usize) -> MultiPoly {
    MultiPoly::from_terms(partition_types(n, k).into_iter().map(|pt| {
        let den: num_bigint::BigInt = pt.r.iter().map(|&r| factorial(r as u64)).product();
        (pt.monomial(), Rational::new(factorial(n as u64), den))
    }))
}

/// Signed Lah polynomial `L_{n,k} = sum_j (-1)^j A_{n,j} B_{j,k}`.
pub fn lah_signed(n: i64, k: i64) -> MultiPoly {
    if n < 0 || k < 0 {
        return MultiPoly::zero();
    }
    (k..=n)
        .map(|j| (&stirling_a(n, j) * &bell(j, k)).scale(&sign(j)))
        .sum()
}

/// Forest polynomial `W_{n,k} = C(n-1,k-1) P^_{n-k,n}`.
pub fn forest(n: i64, k: i64) -> MultiPoly {
    potential_hat(n - k, n).scale(&binomial(n - 1, k - 1))
}

/// `W_{n,k} = B_{n,k}(T^_1, T^_2, ...)`.
pub fn forest_via_trees(n: i64, k: i64) -> MultiPoly {
    forest_family().q(n, k).expect("polynomial substitution")
}

/// Companion of the forest family: `C(n,k) P^_{n-k,-k}`.
pub fn forest_companion(n: i64, k: i64) -> MultiPoly {
    potential_hat(n - k, -k).scale(&binomial(n, k))
}

/// Idempotency polynomial `C(n,k) P^_{n-k,k}`.
pub fn idempotency(n: i64, k: i64) -> MultiPoly {
    potential_hat(n - k, k).scale(&binomial(n, k))
}

/// `B_{n,k}(X_0, 2X_1, 3X_2, ...)`.
pub fn idempotency_via_bell(n: i64, k: i64) -> MultiPoly {
    idempotency_family()
        .q(n, k)
        .expect("polynomial substitution")
}

/// Companion of the idempotency family: `C(n-1,k-1) P^_{n-k,-n}`.
pub fn idempotency_companion(n: i64, k: i64) -> MultiPoly {
    potential_hat(n - k, -n).scale(&binomial(n - 1, k - 1))
}

/// Comtet polynomial by the differential recurrence
/// `C_{n+1,k} = X_0 (C_{n,k-1} + sum_{j=0}^{n-k} X_{j+1} dC_{n,k}/dX_j)`.
pub fn comtet(n: i64, k: i64) -> MultiPoly {
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
    COMTET.get_or_compute(n, k, || {
        let m = n - 1;
        let prev = comtet(m, k);
        let mut inner = comtet(m, k - 1);
        for j in 0..=(m - k) {
            inner += &x(j as Var + 1) * &prev.partial_derivative(j as Var);
        }
        &x(0) * &inner
    })
}

/// `C_{n,k} = A_{n,k}(R^_0, ..., R^_{n-k})`.
pub fn comtet_via_stirling(n: i64, k: i64) -> MultiPoly {
    stirling_a(n, k)
        .compose_seq(|j| reciprocal_poly_hat(j as i64 - 1))
        .expect("R^_0 = 1/X_0 is a unit")
}

/// Companion of the Comtet family: `B_{n,k}(R^_0, ..., R^_{n-k})`.
pub fn comtet_companion(n: i64, k: i64) -> MultiPoly {
    bell(n, k)
        .compose_seq(|j| reciprocal_poly_hat(j as i64 - 1))
        .expect("polynomial substitution")
}

/// Taylor coefficients `L^g_{n,1}(0)` of the involution attached to `g`.
pub fn involution_series(g: &PowerSeries, order: usize) -> Result<PowerSeries> {
    if !g.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let taylor = (0..=order.min(g.order()))
        .map(|n| crate::families::at_taylor(&lah_signed(n as i64, 1), g))
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerSeries::from_taylor(taylor))
}

/// Involution polynomial `J_{g,n} = sum_k L^g_{k,1}(0) B_{n,k}`.
pub fn involution_poly(g: &PowerSeries, n: i64) -> Result<MultiPoly> {
    let f = involution_series(g, n as usize)?;
    Ok((0..=n)
        .map(|k| bell(n, k).scale(&f.taylor(k as usize)))
        .sum())
}

/// `f ∘ f = id` for the involution series of `g`, to the given order.
pub fn involution_check(g: &PowerSeries, order: usize) -> Result<bool> {
    let f = involution_series(g, order)?;
    Ok(f.compose(&f)? == PowerSeries::id(f.order()))
}

/// `U_n = sum_k Q_{n,k} V_k`.
pub fn stirling_transform(fam: &BRepFamily, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    (0..v.len() as i64)
        .map(|n| {
            let mut acc = MultiPoly::zero();
            for k in 0..=n {
                acc += &fam.q(n, k)? * &v[k as usize];
            }
            Ok(acc)
        })
        .collect()
}

/// The inverse transform `V_n = sum_k Q̄_{n,k} U_k`.
pub fn generalized_stirling_inversion(fam: &BRepFamily, u: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    (0..u.len() as i64)
        .map(|n| {
            let mut acc = MultiPoly::zero();
            for k in 0..=n {
                acc += &fam.q_bar(n, k)? * &u[k as usize];
            }
            Ok(acc)
        })
        .collect()
}

/// `sum_j Q̄_{n,j} Q_{j,k} = δ_{n,k}` and the transposed product, `n <= n_max`.
pub fn orthogonality_holds(fam: &BRepFamily, n_max: i64) -> Result<bool> {
    for n in 0..=n_max {
        for k in 0..=n {
            let mut left = MultiPoly::zero();
            let mut right = MultiPoly::zero();
            for j in k..=n {
                left += &fam.q_bar(n, j)? * &fam.q(j, k)?;
                right += &fam.q(n, j)? * &fam.q_bar(j, k)?;
            }
            let delta = if n == k {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
            if left != delta || right != delta {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `C_{n,n-4}` by the closed coefficient formula in `n`.
pub fn comtet_n_minus_4(n: i64) -> MultiPoly {
    let c5 = binomial(n, 5);
    let n_q = int(n);
    let n2 = &n_q * &n_q;
    let n3 = &n2 * &n_q;
    let mono = |e: &[(Var, i64)]| {
        e.iter()
            .map(|&(v, p)| x(v).pow(p).expect("nonnegative or X0 power"))
            .fold(MultiPoly::one(), |a, b| &a * &b)
    };
    let terms = [
        (
            (int(15) * &n3 - int(150) * &n2 + int(485) * &n_q - int(502)) / int(48),
            mono(&[(0, n - 4), (1, 4)]),
        ),
        (
            (int(15) * &n2 - int(85) * &n_q + int(116)) / int(6),
            mono(&[(0, n - 3), (1, 2), (2, 1)]),
        ),
        (
            (int(5) * &n_q - int(13)) / int(3),
            mono(&[(0, n - 2), (2, 2)]),
        ),
        (
            (int(5) * &n_q - int(11)) / int(2),
            mono(&[(0, n - 2), (1, 1), (3, 1)]),
        ),
        (Rational::one(), mono(&[(0, n - 1), (4, 1)])),
    ];
    terms.into_iter().map(|(c, m)| m.scale(&(&c5 * c))).sum()
}

/// Helper for tests and suites: `Q̄_{1,1}` of a regular family.
pub fn leading_inverse(fam: &BRepFamily) -> Result<MultiPoly> {
    if !fam.is_regular() {
        return Err(Error::NotRegular);
    }
    Ok(fam.h(1).pow(-1)?)
}
