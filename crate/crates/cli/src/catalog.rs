//! Family names accepted on the command line and their alternative routes.

use stirpoly::derived::{
    comtet, comtet_family, comtet_via_stirling, cycle_family, cycle_indicator,
    cycle_indicator_partition_sum, forest, forest_family, forest_via_trees, idempotency,
    idempotency_family, idempotency_via_bell, lah_signed, lah_signed_family, lah_unsigned,
    lah_unsigned_family, lah_unsigned_partition_sum, BRepFamily,
};
use stirpoly::extended::{bell_ext, bell_via_assoc, stirling_a_ext};
use stirpoly::families::{
    assoc_bell, bell, bell_partition_sum, complete_bell, geometric, logarithmic, potential,
    potential_hat, reciprocal_poly_hat, stirling_a, stirling_a_partition_sum, stirling_a_via_assoc,
    tree_poly_hat,
};
use stirpoly::inversion::{
    knuth_pittel, knuth_pittel_via_bell, lambda_classical, lambda_classical_ss,
};
use stirpoly::numbers::{binomial, factorial_q, falling_int, int, sign};
use stirpoly::{x, MultiPoly};

use crate::error::CliError;

/// A family indexed by `(n, k)` or by `n` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Bell,
    StirlingA,
    Potential,
    PotentialHat,
    AssocBell,
    Cycle,
    Lah,
    LahUnsigned,
    Comtet,
    Forest,
    Idempotency,
    Logarithmic,
    Geometric,
    CompleteBell,
    Reciprocal,
    Tree,
    Lambda,
    KnuthPittel,
}

const NAMES: &[(&str, Family)] = &[
    ("bell", Family::Bell),
    ("stirling-a", Family::StirlingA),
    ("potential", Family::Potential),
    ("potential-hat", Family::PotentialHat),
    ("assoc-bell", Family::AssocBell),
    ("cycle", Family::Cycle),
    ("lah", Family::Lah),
    ("lah+", Family::LahUnsigned),
    ("comtet", Family::Comtet),
    ("forest", Family::Forest),
    ("idempotency", Family::Idempotency),
    ("logarithmic", Family::Logarithmic),
    ("geometric", Family::Geometric),
    ("complete-bell", Family::CompleteBell),
    ("reciprocal", Family::Reciprocal),
    ("tree", Family::Tree),
    ("lambda", Family::Lambda),
    ("knuth-pittel", Family::KnuthPittel),
];

impl Family {
    pub fn parse(s: &str) -> Result<Family, CliError> {
        NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|&(_, f)| f)
            .ok_or_else(|| {
                let known: Vec<&str> = NAMES.iter().map(|(n, _)| *n).collect();
                CliError::Usage(format!(
                    "unknown family `{s}`; expected one of {}",
                    known.join(", ")
                ))
            })
    }

    pub fn name(self) -> &'static str {
        NAMES
            .iter()
            .find(|(_, f)| *f == self)
            .map(|(n, _)| *n)
            .expect("every family is named")
    }

    /// Whether the family takes a second index.
    pub fn two_indexed(self) -> bool {
        !matches!(
            self,
            Family::Logarithmic
                | Family::Geometric
                | Family::CompleteBell
                | Family::Reciprocal
                | Family::Tree
                | Family::Lambda
                | Family::KnuthPittel
        )
    }

    fn brep(self) -> Option<BRepFamily> {
        match self {
            Family::Cycle => Some(cycle_family()),
            Family::Lah => Some(lah_signed_family()),
            Family::LahUnsigned => Some(lah_unsigned_family()),
            Family::Comtet => Some(comtet_family()),
            Family::Forest => Some(forest_family()),
            Family::Idempotency => Some(idempotency_family()),
            _ => None,
        }
    }

    fn validate(self, n: i64, k: Option<i64>) -> Result<i64, CliError> {
        let k = match (self.two_indexed(), k) {
            (true, Some(k)) => k,
            (true, None) => {
                return Err(CliError::Usage(format!("family {} needs --k", self.name())))
            }
            (false, Some(_)) => {
                return Err(CliError::Usage(format!(
                    "family {} takes no --k",
                    self.name()
                )))
            }
            (false, None) => 0,
        };
        let negative_ok = matches!(self, Family::Bell | Family::StirlingA) || self.brep().is_some();
        if !negative_ok && n < 0 {
            return Err(CliError::Usage(format!(
                "family {} needs n >= 0",
                self.name()
            )));
        }
        if matches!(self, Family::AssocBell) && k < 0 {
            return Err(CliError::Usage("assoc-bell needs k >= 0".into()));
        }
        Ok(k)
    }

    /// The value by the default route: the recurrence where there is one.
    pub fn compute(self, n: i64, k: Option<i64>) -> Result<MultiPoly, CliError> {
        let k = self.validate(n, k)?;
        let classical = n >= 0 && k >= 0;
        Ok(match self {
            Family::Bell => bell_ext(n, k),
            Family::StirlingA => stirling_a_ext(n, k),
            Family::Potential => potential(n, k),
            Family::PotentialHat => potential_hat(n, k),
            Family::AssocBell => assoc_bell(n, k),
            Family::Cycle if classical => cycle_indicator(n, k),
            Family::Lah if classical => lah_signed(n, k),
            Family::LahUnsigned if classical => lah_unsigned(n, k),
            Family::Comtet if classical => comtet(n, k),
            Family::Forest if classical => forest(n, k),
            Family::Idempotency if classical => idempotency(n, k),
            Family::Cycle
            | Family::Lah
            | Family::LahUnsigned
            | Family::Comtet
            | Family::Forest
            | Family::Idempotency => self.brep().expect("derived family").q(n, k)?,
            Family::Logarithmic => logarithmic(n),
            Family::Geometric => geometric(n),
            Family::CompleteBell => complete_bell(n),
            Family::Reciprocal => reciprocal_poly_hat(n),
            Family::Tree => tree_poly_hat(n),
            Family::Lambda => lambda_classical(n),
            Family::KnuthPittel => knuth_pittel(n),
        })
    }

    /// Independent routes to the same value, labelled.
    pub fn alternatives(
        self,
        n: i64,
        k: Option<i64>,
    ) -> Result<Vec<(&'static str, MultiPoly)>, CliError> {
        let k = self.validate(n, k)?;
        let classical = n >= 0 && k >= 0;
        let (nu, ku) = (n.max(0) as usize, k.max(0) as usize);
        let mut out: Vec<(&'static str, MultiPoly)> = Vec::new();
        match self {
            Family::Bell if classical => {
                out.push(("partition sum", bell_partition_sum(nu, ku)));
                if k <= n {
                    out.push(("associate Bell sum", bell_via_assoc(n, n - k)));
                }
            }
            Family::StirlingA if classical => {
                out.push(("partition sum", stirling_a_partition_sum(nu, ku)));
                if k >= 1 {
                    out.push(("associate Bell sum", stirling_a_via_assoc(n, k)));
                }
            }
            Family::Bell => out.push(("reciprocity", stirling_a_ext(-k, -n).scale(&sign(n - k)))),
            Family::StirlingA => out.push(("reciprocity", bell_ext(-k, -n).scale(&sign(n - k)))),
            Family::Potential => {
                let s: MultiPoly = (0..=n)
                    .map(|j| bell(n, j).scale(&falling_int(k, j as u64)))
                    .sum();
                out.push(("falling-power Bell sum", s));
            }
            Family::PotentialHat => {
                let s: MultiPoly = (0..=n)
                    .map(|j| {
                        x(0).pow(k - j)
                            .map(|p| (&p * &bell(n, j)).scale(&falling_int(k, j as u64)))
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .sum();
                out.push(("falling-power Bell sum", s));
            }
            Family::AssocBell => {
                let s = bell(n, k).substitute(|v| (v == 1).then(MultiPoly::zero))?;
                out.push(("Bell at X1 = 0", s));
            }
            Family::Cycle if classical => {
                out.push(("partition sum", cycle_indicator_partition_sum(nu, ku)))
            }
            Family::LahUnsigned if classical => {
                out.push(("partition sum", lah_unsigned_partition_sum(nu, ku)))
            }
            Family::Forest if classical => out.push(("Bell of trees", forest_via_trees(n, k))),
            Family::Idempotency if classical => {
                out.push(("Bell substitution", idempotency_via_bell(n, k)))
            }
            Family::Comtet if classical => out.push(("companion route", comtet_via_stirling(n, k))),
            Family::Lah if classical => {
                let fam = lah_signed_family();
                out.push(("B-representation", fam.q(n, k)?));
            }
            Family::Cycle
            | Family::Lah
            | Family::LahUnsigned
            | Family::Comtet
            | Family::Forest
            | Family::Idempotency => {
                let fam = self.brep().expect("derived family");
                out.push(("reciprocity", fam.q_bar(-k, -n)?.scale(&sign(n - k))));
            }
            Family::Logarithmic => {
                let s: MultiPoly = (1..=n)
                    .map(|j| potential(n, j).scale(&(sign(j - 1) * binomial(n, j) / int(j))))
                    .sum();
                out.push(("potential sum", s));
            }
            Family::Geometric => {
                let s: MultiPoly = (0..=n)
                    .map(|j| bell(n, j).scale(&factorial_q(j as u64)))
                    .sum();
                out.push(("Bell sum", s));
            }
            Family::CompleteBell => out.push((
                "partition sum",
                (0..=nu).map(|j| bell_partition_sum(nu, j)).sum(),
            )),
            Family::Reciprocal => out.push(("potential P^(n,-1)", potential_hat(n, -1))),
            Family::Tree => {
                if n >= 1 {
                    out.push(("potential P^(n-1,n)", potential_hat(n - 1, n)));
                }
            }
            Family::Lambda => {
                out.push(("companion A(n,1)", stirling_a(n, 1)));
                out.push(("Schlomilch-Schlafli sum", lambda_classical_ss(n)));
            }
            Family::KnuthPittel => out.push(("Bell route", knuth_pittel_via_bell(n))),
        }
        Ok(out)
    }
}
