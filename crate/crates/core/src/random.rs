//! Seeded random series for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::Rational;
use crate::series::PowerSeries;

/// Which class the generated series must fall into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `f(0) = 0`
    F0,
    /// `f(0) != 0`
    Unit,
    /// `f(0) = 0`, `f'(0) != 0`
    Invertible,
    Any,
}

/// Deterministic generator of small rational series: numerators in
/// `[-5, 5]`, denominators in `{1, 2, 3}`.
#[derive(Clone, Debug)]
pub struct SeriesRng {
    rng: ChaCha8Rng,
}

impl SeriesRng {
    pub fn new(seed: u64) -> Self {
        SeriesRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(-5..=5);
        let d: i64 = self.rng.gen_range(1..=3);
        Rational::new(n.into(), d.into())
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    /// Ordinary coefficients `c_0..c_order`.
    pub fn series(&mut self, order: usize, kind: SeriesKind) -> PowerSeries {
        let coeffs = (0..=order)
            .map(|i| match (kind, i) {
                (SeriesKind::F0 | SeriesKind::Invertible, 0) => Rational::from_integer(0.into()),
                (SeriesKind::Unit, 0) | (SeriesKind::Invertible, 1) => self.nonzero(),
                _ => self.rational(),
            })
            .collect();
        PowerSeries::new(coeffs)
    }

    pub fn u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_classed() {
        let a = SeriesRng::new(7).series(6, SeriesKind::Invertible);
        let b = SeriesRng::new(7).series(6, SeriesKind::Invertible);
        assert_eq!(a, b);
        assert!(a.is_invertible());
        assert!(SeriesRng::new(3).series(4, SeriesKind::Unit).is_f1());
    }
}
