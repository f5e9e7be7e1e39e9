//! The four moment-map families behind one trait, selected by name.

mod gl;
mod sl;
mod so;
mod sp;

use std::fmt;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Ambient, Monomial, Polynomial};
use crate::series::TruncatedSeries;

pub use gl::Gl;
pub use sl::Sl;
pub use so::So;
pub use sp::{sp_relabeled_generators, Sp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Gl,
    Sl,
    So,
    Sp,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Gl => "gl",
            FamilyKind::Sl => "sl",
            FamilyKind::So => "so",
            FamilyKind::Sp => "sp",
        }
    }
}

/// One family of moment-map ideals, parametrised by `n`.
pub trait MomentFamily: Send + Sync {
    fn kind(&self) -> FamilyKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn min_n(&self) -> usize {
        1
    }

    /// Number of p-variables (equal to the number of q-variables).
    fn vars_per_side(&self, n: usize) -> usize {
        n
    }

    fn generator_count(&self, n: usize) -> usize;

    /// Generators in their canonical enumeration order.
    fn generators(&self, n: usize) -> Vec<Polynomial>;

    fn variable_names(&self, n: usize) -> Vec<String> {
        let m = self.vars_per_side(n);
        (1..=m).map(|i| format!("p{i}")).chain((1..=m).map(|i| format!("q{i}"))).collect()
    }

    /// Characteristic restrictions under which the closed forms hold.
    fn field_guard(&self, _n: usize, _field: FieldSpec) -> Result<()> {
        Ok(())
    }

    fn hilbert_closed(&self, n: usize, order: u32) -> TruncatedSeries;

    fn betti_closed(&self, n: usize) -> BettiTable;

    /// `sum beta_{i,v} s^{v1} t^{v2} u^i` from the closed formulas.
    fn poincare_over_s(&self, n: usize, order: u32) -> Result<TruncatedSeries> {
        Ok(self.betti_closed(n).poincare_series(order))
    }

    /// Largest `n` for which oracle runs are enabled without an override.
    fn oracle_limit(&self) -> usize {
        3
    }

    /// Caveat attached to the closed-form table, if any.
    fn closed_form_note(&self) -> Option<&'static str> {
        None
    }
}

static GL: Gl = Gl;
static SL: Sl = Sl;
static SO: So = So;
static SP: Sp = Sp;

static REGISTRY: [&dyn MomentFamily; 4] = [&GL, &SL, &SO, &SP];

/// All registered families.
pub fn registry() -> &'static [&'static dyn MomentFamily] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static dyn MomentFamily> {
    let key = name.trim().to_ascii_lowercase();
    registry().iter().copied().find(|f| f.name() == key).ok_or_else(|| {
        let known: Vec<_> = registry().iter().map(|f| f.name()).collect();
        Error::InvalidInput(format!("unknown family '{name}', expected one of {}", known.join(", ")))
    })
}

/// A family together with its parameter.
#[derive(Clone, Copy)]
pub struct RepFamily {
    family: &'static dyn MomentFamily,
    n: usize,
}

impl RepFamily {
    pub fn new(family: &'static dyn MomentFamily, n: usize) -> Result<Self> {
        if n < family.min_n() {
            return Err(Error::InvalidInput(format!("{} needs n >= {}, got {n}", family.name(), family.min_n())));
        }
        Ok(RepFamily { family, n })
    }

    pub fn parse(name: &str, n: usize) -> Result<Self> {
        Self::new(lookup(name)?, n)
    }

    pub fn family(&self) -> &'static dyn MomentFamily {
        self.family
    }

    pub fn kind(&self) -> FamilyKind {
        self.family.kind()
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> Ambient {
        let m = self.family.vars_per_side(self.n);
        Ambient::new(m, m)
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.family.generators(self.n)
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.family.variable_names(self.n)
    }

    pub fn field_guard(&self, field: FieldSpec) -> Result<()> {
        self.family.field_guard(self.n, field)
    }

    pub fn hilbert_closed(&self, order: u32) -> TruncatedSeries {
        self.family.hilbert_closed(self.n, order)
    }

    pub fn betti_closed(&self) -> BettiTable {
        self.family.betti_closed(self.n)
    }

    pub fn poincare_over_s(&self, order: u32) -> Result<TruncatedSeries> {
        self.family.poincare_over_s(self.n, order)
    }
}

impl fmt::Debug for RepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.name(), self.n)
    }
}

impl fmt::Display for RepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name(), self.n)
    }
}

impl PartialEq for RepFamily {
    fn eq(&self, other: &Self) -> bool {
        self.kind() == other.kind() && self.n == other.n
    }
}

/// Builds `sum c * x_i * y_j` in a ring with `m` variables per side, where
/// each term is `(coefficient, p-index, q-index)`.
pub(crate) fn bilinear(m: usize, terms: &[(i64, usize, usize)]) -> Polynomial {
    let amb = Ambient::new(m, m);
    Polynomial::from_terms(
        amb,
        terms.iter().map(|&(c, i, j)| {
            let mut e = vec![0u16; 2 * m];
            e[i] += 1;
            e[m + j] += 1;
            (c, Monomial::from_exponents(e))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BiDegree;

    #[test]
    fn lookup_by_name() {
        for name in ["gl", "SL", " so ", "sp"] {
            assert!(lookup(name).is_ok());
        }
        assert!(lookup("e8").is_err());
        assert!(RepFamily::parse("sl", 1).is_err());
        assert!(RepFamily::parse("gl", 0).is_err());
    }

    #[test]
    fn counts_and_degrees() {
        for fam in registry() {
            for n in fam.min_n()..=10 {
                let gens = fam.generators(n);
                assert_eq!(gens.len(), fam.generator_count(n), "{} n={n}", fam.name());
                for g in &gens {
                    assert_eq!(g.bidegree(), Some(BiDegree::new(1, 1)));
                }
            }
        }
        assert_eq!(lookup("gl").unwrap().generator_count(4), 16);
        assert_eq!(lookup("sl").unwrap().generator_count(4), 15);
        assert_eq!(lookup("so").unwrap().generator_count(4), 6);
        assert_eq!(lookup("sp").unwrap().generator_count(4), 36);
    }

    fn rendered(name: &str, n: usize) -> Vec<String> {
        let f = RepFamily::parse(name, n).unwrap();
        let names = f.variable_names();
        f.generators().iter().map(|g| g.render(&names)).collect()
    }

    #[test]
    fn printed_generator_lists() {
        assert_eq!(rendered("gl", 2), ["p1*q1", "p1*q2", "p2*q1", "p2*q2"]);
        assert_eq!(rendered("sl", 2), ["p1*q2", "p2*q1", "p1*q1 - p2*q2"]);
        assert_eq!(rendered("so", 2), ["p1*q2 - p2*q1"]);
        assert_eq!(rendered("sp", 1), ["p11*q11 - p21*q21", "p11*q21", "p21*q11"]);
    }

    #[test]
    fn symmetric_closed_tables() {
        for fam in registry() {
            for n in fam.min_n()..=5 {
                assert!(fam.betti_closed(n).is_symmetric(), "{} n={n}", fam.name());
            }
        }
    }
}
