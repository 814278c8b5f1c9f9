//! Exact scalar helpers: factorials, falling powers and binomial coefficients
//! over the integers, with the integer-index extension used by the reciprocity
//! laws.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polyring::Rational;

/// Rational from an `i64`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Falling power `(x)_j = x(x-1)...(x-j+1)`, `(x)_0 = 1`.
pub fn falling(x: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..j {
        acc *= &f;
        f -= Rational::one();
    }
    acc
}

pub fn falling_int(x: i64, j: u64) -> Rational {
    falling(&int(x), j)
}

/// Rising power `x(x+1)...(x+j-1)`.
pub fn rising(x: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..j {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// Binomial coefficient for arbitrary integer arguments.
///
/// For `k >= 0` this is `(n)_k / k!` (so it is defined for negative `n` and
/// vanishes for `0 <= n < k`). For `k < 0` it is zero unless `n` is negative
/// and `k <= n`, in which case it equals `C(n, n - k)`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k >= 0 {
        falling_int(n, k as u64) / factorial_q(k as u64)
    } else if n < 0 && k <= n {
        binomial(n, n - k)
    } else {
        Rational::zero()
    }
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `x^e` for a rational and any integer exponent (`x != 0` when `e < 0`).
pub fn rpow(x: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// True when the rational is a (possibly negative) integer.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Absolute value.
pub fn abs(x: &Rational) -> Rational {
    x.abs()
}
